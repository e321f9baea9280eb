//! Request and response shapes shared by the CLI and the HTTP endpoints.
//! Every handler is a pure function of its request.

use serde::{Deserialize, Serialize};

use pairquat::interpolation::slerp_path;
use pairquat::{
    align_matrix, align_matrix3, belt_frames, merge, quat_mul, tmap, BeltFrame, Error, MatrixN, Quaternion,
    RotationMatrix, SlerpMethod, Vec3, VectorPair,
};

use crate::json;

/// A failed request: a stable machine-readable `error` code plus a message.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApiError {
    pub error: String,
    pub message: String,
}

impl ApiError {
    pub fn new(code: &str, message: impl Into<String>) -> Self {
        ApiError { error: code.to_string(), message: message.into() }
    }

    pub fn malformed(err: impl std::fmt::Display) -> Self {
        ApiError::new("MalformedJson", err.to_string())
    }

    pub fn to_json(&self) -> String {
        json::to_string(self)
    }
}

impl From<Error> for ApiError {
    fn from(err: Error) -> Self {
        ApiError::new(err.code(), err.to_string())
    }
}

impl std::fmt::Display for ApiError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.error, self.message)
    }
}

pub type ApiResult<T> = Result<T, ApiError>;

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> ApiResult<T> {
    serde_json::from_str(text).map_err(ApiError::malformed)
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MulRequest {
    pub a: Quaternion,
    pub b: Quaternion,
}

pub fn mul(req: &MulRequest) -> ApiResult<Quaternion> {
    Ok(quat_mul(req.a, req.b))
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MergeRequest {
    pub left: VectorPair,
    pub right: VectorPair,
}

#[derive(Debug, Clone, Serialize)]
pub struct MergeResponse {
    pub pair: VectorPair,
    pub quaternion: Quaternion,
}

pub fn merge_pairs(req: &MergeRequest) -> ApiResult<MergeResponse> {
    let pair = merge(req.left, req.right)?;
    Ok(MergeResponse { pair, quaternion: tmap(pair) })
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlignRequest {
    #[serde(rename = "uI")]
    pub u_i: Vec<f64>,
    #[serde(rename = "uF")]
    pub u_f: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlignResponse {
    pub matrix: MatrixN,
}

fn as_vec3(v: &[f64]) -> ApiResult<Vec3> {
    <[f64; 3]>::try_from(v)
        .map(Vec3::from)
        .map_err(|_| Error::DimensionMismatch { left: 3, right: v.len() }.into())
}

/// Three-dimensional inputs go through the 18-multiplication kernel, other
/// dimensions through the generic formula.
pub fn align(req: &AlignRequest) -> ApiResult<AlignResponse> {
    let matrix = if req.u_i.len() == 3 && req.u_f.len() == 3 {
        align_matrix3(as_vec3(&req.u_i)?, as_vec3(&req.u_f)?)?.into()
    } else {
        align_matrix(&req.u_i, &req.u_f)?
    };
    Ok(AlignResponse { matrix })
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrackballRequest {
    #[serde(rename = "uI")]
    pub u_i: Vec3,
    #[serde(rename = "uF")]
    pub u_f: Vec3,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrackballResponse {
    pub matrix: RotationMatrix,
    /// Half-angle class `T(uI, (uI + uF)/|uI + uF|)`.
    pub quaternion: Quaternion,
}

pub fn trackball(req: &TrackballRequest) -> ApiResult<TrackballResponse> {
    let matrix = align_matrix3(req.u_i, req.u_f)?;
    let mid = (req.u_i + req.u_f).normalized().ok_or(Error::AntipodalInputs)?;
    Ok(TrackballResponse { matrix, quaternion: tmap(VectorPair::new(req.u_i, mid)) })
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SlerpRequest {
    pub a: Quaternion,
    pub b: Quaternion,
    #[serde(default)]
    pub t: Option<f64>,
    #[serde(default)]
    pub samples: Option<usize>,
    #[serde(default = "default_method")]
    pub method: SlerpMethod,
}

fn default_method() -> SlerpMethod {
    SlerpMethod::S3
}

#[derive(Debug, Clone, Serialize)]
pub struct SlerpSample {
    pub t: f64,
    pub q: Quaternion,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum SlerpResponse {
    Point(Quaternion),
    Path(Vec<SlerpSample>),
}

impl SlerpRequest {
    /// `t` outside `[0, 1]` extrapolates along the great circle.
    pub fn extrapolates(&self) -> bool {
        self.t.is_some_and(|t| !(0.0..=1.0).contains(&t))
    }
}

pub fn slerp(req: &SlerpRequest) -> ApiResult<SlerpResponse> {
    match (req.t, req.samples) {
        (Some(_), Some(_)) => Err(ApiError::new("InvalidParameter", "give either t or samples, not both")),
        (Some(t), None) => {
            if !t.is_finite() {
                return Err(ApiError::new("InvalidParameter", "t must be finite"));
            }
            Ok(SlerpResponse::Point(req.method.eval(req.a, req.b, t)?))
        }
        (None, samples) => {
            let path = slerp_path(req.method, req.a, req.b, samples.unwrap_or(10))?;
            Ok(SlerpResponse::Path(path.into_iter().map(|(t, q)| SlerpSample { t, q }).collect()))
        }
    }
}

pub const DEFAULT_BELT_NS: usize = 64;
pub const DEFAULT_BELT_NT: usize = 16;
/// Upper bound on the number of frames a single request may ask for.
pub const MAX_BELT_FRAMES: usize = 4_000_000;

pub fn belt(ns: usize, nt: usize) -> ApiResult<Vec<BeltFrame>> {
    if (ns + 1).saturating_mul(nt + 1) > MAX_BELT_FRAMES {
        return Err(Error::InvalidGrid { ns, nt }.into());
    }
    Ok(belt_frames(ns, nt)?)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Health {
    pub ok: bool,
}
