use axum::body::{to_bytes, Body};
use axum::http::{Method, Request, StatusCode};
use tower::ServiceExt;

use pairquat_cli::cli::run;
use pairquat_cli::server::router;

async fn call(method: Method, uri: &str, body: &str) -> (StatusCode, String) {
    let req = Request::builder().method(method).uri(uri).body(Body::from(body.to_string())).unwrap();
    let resp = router().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = to_bytes(resp.into_body(), usize::MAX).await.unwrap();
    (status, String::from_utf8(bytes.to_vec()).unwrap())
}

async fn post(uri: &str, body: &str) -> (StatusCode, String) {
    call(Method::POST, uri, body).await
}

fn cli_stdout(args: &[&str]) -> String {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(run(std::iter::once("pairquat").chain(args.iter().copied()), &mut out, &mut err), 0);
    String::from_utf8(out).unwrap()
}

#[tokio::test]
async fn health() {
    assert_eq!(call(Method::GET, "/api/health", "").await, (StatusCode::OK, r#"{"ok":true}"#.into()));
}

#[tokio::test]
async fn mul_identity_echoes_b() {
    let (status, body) = post("/api/mul", r#"{"a":{"s":1,"v":[0,0,0]},"b":{"s":0.25,"v":[-1,2.5,3]}}"#).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body, r#"{"s":0.25,"v":[-1,2.5,3]}"#);
}

#[tokio::test]
async fn trackball_quarter_turn() {
    let (status, body) = post("/api/trackball", r#"{"uI":[1,0,0],"uF":[0,1,0]}"#).await;
    assert_eq!(status, StatusCode::OK);
    let v: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(v["matrix"], serde_json::json!([[0, -1, 0], [1, 0, 0], [0, 0, 1]]));
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let q = &v["quaternion"];
    assert!((q["s"].as_f64().unwrap() - h).abs() < 1e-15);
    assert!((q["v"][2].as_f64().unwrap() - h).abs() < 1e-15);
    assert_eq!(q["v"][0], 0);
    assert_eq!(q["v"][1], 0);
}

#[tokio::test]
async fn validation_failures_are_400() {
    let (status, body) = post("/api/align", r#"{"uI":[0,0,1],"uF":[0,0,-1]}"#).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let v: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(v["error"], "AntipodalInputs");
    assert!(v["message"].is_string());

    let (status, body) = post("/api/trackball", r#"{"uI":[1,1,0],"uF":[0,1,0]}"#).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(body.contains("NonUnitVector"));

    let (status, body) = post("/api/mul", "not json").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(body.contains("MalformedJson"));

    let (status, body) = post("/api/slerp", r#"{"a":{"s":1,"v":[0,0,0]},"b":{"s":-1,"v":[0,0,0]},"t":0.5}"#).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(body.contains("AntipodalQuaternions"));

    let (status, body) = call(Method::GET, "/api/belt?ns=abc", "").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(body.contains("InvalidParameter"));

    let (status, _) = call(Method::GET, "/api/belt?ns=0&nt=3", "").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn unknown_route_is_404() {
    let (status, body) = call(Method::GET, "/api/nope", "").await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert!(body.contains("NotFound"));
    let (status, _) = call(Method::GET, "/", "").await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn http_and_cli_bytes_match() {
    let i = r#"{"s":0,"v":[1,0,0]}"#;
    let j = r#"{"s":0,"v":[0.6,0.8,0]}"#;
    let cases: [(&str, String, Vec<&str>); 4] = [
        ("/api/mul", format!(r#"{{"a":{i},"b":{j}}}"#), vec!["mul", "--a", i, "--b", j]),
        ("/api/align", r#"{"uI":[0,0.6,0.8],"uF":[1,0,0]}"#.into(), vec!["align", "--ui", "[0,0.6,0.8]", "--uf", "[1,0,0]"]),
        (
            "/api/slerp",
            format!(r#"{{"a":{i},"b":{j},"t":0.3,"method":"s2"}}"#),
            vec!["slerp", "--a", i, "--b", j, "--t", "0.3", "--method", "s2"],
        ),
        (
            "/api/merge",
            r#"{"left":{"first":[1,0,0],"second":[0,1,0]},"right":{"first":[0,1,0],"second":[0,0,1]}}"#.into(),
            vec!["merge", "--left", r#"{"first":[1,0,0],"second":[0,1,0]}"#, "--right", r#"{"first":[0,1,0],"second":[0,0,1]}"#],
        ),
    ];
    for (uri, body, args) in cases {
        let (status, http) = post(uri, &body).await;
        assert_eq!(status, StatusCode::OK, "{uri}");
        assert_eq!(http + "\n", cli_stdout(&args), "{uri}");
    }
    let (_, http) = call(Method::GET, "/api/belt?ns=6&nt=3", "").await;
    assert_eq!(http + "\n", cli_stdout(&["belt", "--ns", "6", "--nt", "3", "--format", "json"]));
}

#[tokio::test]
async fn belt_defaults() {
    let (status, body) = call(Method::GET, "/api/belt", "").await;
    assert_eq!(status, StatusCode::OK);
    let frames: Vec<serde_json::Value> = serde_json::from_str(&body).unwrap();
    assert_eq!(frames.len(), 65 * 17);
    for key in ["s", "t", "e", "q", "r"] {
        assert!(frames[0].get(key).is_some());
    }
}

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn concurrent_identical_requests() {
    let app = router();
    let body = r#"{"uI":[0.48,0.6,0.64],"uF":[0,0.8,-0.6]}"#;
    let tasks: Vec<_> = (0..64)
        .map(|_| {
            let app = app.clone();
            tokio::spawn(async move {
                let req = Request::builder().method(Method::POST).uri("/api/trackball").body(Body::from(body)).unwrap();
                let resp = app.oneshot(req).await.unwrap();
                to_bytes(resp.into_body(), usize::MAX).await.unwrap()
            })
        })
        .collect();
    let mut bodies = Vec::new();
    for t in tasks {
        bodies.push(t.await.unwrap());
    }
    assert!(bodies.windows(2).all(|w| w[0] == w[1]));
}

#[tokio::test]
async fn serves_over_tcp() {
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    tokio::spawn(async move { axum::serve(listener, router()).await.unwrap() });
    use tokio::io::{AsyncReadExt, AsyncWriteExt};
    let mut stream = tokio::net::TcpStream::connect(addr).await.unwrap();
    stream.write_all(b"GET /api/health HTTP/1.1\r\nHost: x\r\nConnection: close\r\n\r\n").await.unwrap();
    let mut text = String::new();
    stream.read_to_string(&mut text).await.unwrap();
    assert!(text.starts_with("HTTP/1.1 200"));
    assert!(text.ends_with(r#"{"ok":true}"#));
}
