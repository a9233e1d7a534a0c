//! HTTP session service for playing puzzles. Endpoints, bodies and error
//! codes are listed in `docs/API.md`.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, RwLock};
use std::time::{SystemTime, UNIX_EPOCH};

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use rubikmap::map::{self, Map, MapError};
use rubikmap::puzzle::{format_moves, Puzzle, PuzzleError, PuzzleState};
use rubikmap::perm::Word;
use serde::Deserialize;
use serde_json::{json, Value};

const DEFAULT_SCRAMBLE_LENGTH: usize = 30;
const MAX_SCRAMBLE_LENGTH: usize = 10_000;

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    code: &'static str,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> Self {
        ApiError {
            status,
            code,
            message: message.into(),
        }
    }

    fn malformed(message: impl Into<String>) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, "MALFORMED_REQUEST", message)
    }
}

impl From<PuzzleError> for ApiError {
    fn from(e: PuzzleError) -> Self {
        match e {
            PuzzleError::UnknownFace { .. } => {
                ApiError::new(StatusCode::BAD_REQUEST, "UNKNOWN_FACE", e.to_string())
            }
            PuzzleError::MalformedMoves(_) => ApiError::malformed(e.to_string()),
            PuzzleError::Rubik(_) => {
                ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "UNSUPPORTED_MAP", e.to_string())
            }
            _ => ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "INTERNAL", e.to_string()),
        }
    }
}

impl From<MapError> for ApiError {
    fn from(e: MapError) -> Self {
        ApiError::new(StatusCode::NOT_FOUND, "UNKNOWN_MAP", e.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = json!({ "error": { "code": self.code, "message": self.message } });
        (self.status, Json(body)).into_response()
    }
}

type ApiResult = Result<(StatusCode, Json<Value>), ApiError>;

struct Session {
    id: u64,
    puzzle: Arc<Puzzle>,
    state: PuzzleState,
    created: u64,
}

impl Session {
    fn view(&self) -> Value {
        let stickers: Vec<usize> = self
            .puzzle
            .stickers(&self.state)
            .iter()
            .map(|f| f + 1)
            .collect();
        json!({
            "id": self.id.to_string(),
            "map": self.puzzle.map().name(),
            "stickers": stickers,
            "history": format_moves(self.state.history()),
            "moves": moves_json(self.state.history()),
            "solved": self.puzzle.is_solved(&self.state),
            "created": self.created,
        })
    }
}

fn moves_json(word: &Word) -> Value {
    word.letters()
        .iter()
        .map(|l| json!({ "face": l.generator + 1, "exponent": l.exponent }))
        .collect()
}

pub struct AppState {
    seed: u64,
    puzzles: Mutex<HashMap<String, Arc<Puzzle>>>,
    sessions: RwLock<HashMap<u64, Arc<Mutex<Session>>>>,
    next_id: AtomicU64,
}

impl AppState {
    pub fn new(seed: u64) -> Self {
        AppState {
            seed,
            puzzles: Mutex::new(HashMap::new()),
            sessions: RwLock::new(HashMap::new()),
            next_id: AtomicU64::new(1),
        }
    }

    /// Puzzles are built once per map and shared by all sessions.
    fn puzzle(&self, name: &str) -> Result<Arc<Puzzle>, ApiError> {
        if let Some(p) = self.puzzles.lock().unwrap().get(name) {
            return Ok(p.clone());
        }
        let m = map::by_name(name)?;
        let p = Arc::new(Puzzle::new(m, self.seed)?);
        let mut cache = self.puzzles.lock().unwrap();
        Ok(cache.entry(name.to_string()).or_insert(p).clone())
    }

    fn session(&self, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
        let unknown =
            || ApiError::new(StatusCode::NOT_FOUND, "UNKNOWN_SESSION", format!("no session {id:?}"));
        let id: u64 = id.parse().map_err(|_| unknown())?;
        self.sessions
            .read()
            .unwrap()
            .get(&id)
            .cloned()
            .ok_or_else(unknown)
    }
}

/// Parses an optional JSON body; an empty body reads as `{}`.
fn body<T: for<'de> Deserialize<'de>>(bytes: &Bytes) -> Result<T, ApiError> {
    let text = if bytes.iter().all(u8::is_ascii_whitespace) {
        &b"{}"[..]
    } else {
        &bytes[..]
    };
    serde_json::from_slice(text).map_err(|e| ApiError::malformed(e.to_string()))
}

fn map_summary(m: &Map) -> Value {
    json!({
        "name": m.name(),
        "vertices": m.vertex_count(),
        "edges": m.edge_count(),
        "faces": m.face_count(),
        "genus": m.genus(),
        "face_sizes": m.face_sizes(),
    })
}

async fn list_maps() -> ApiResult {
    let maps: Vec<Value> = map::catalog_names()
        .iter()
        .filter_map(|n| map::by_name(n).ok())
        .map(|m| map_summary(&m))
        .collect();
    Ok((StatusCode::OK, Json(json!({ "maps": maps }))))
}

async fn get_map(Path(name): Path<String>) -> ApiResult {
    let m = map::by_name(&name)?;
    let one_based = |ds: &[usize]| ds.iter().map(|d| d + 1).collect::<Vec<_>>();
    let faces: Vec<Vec<usize>> = m.faces().iter().map(|f| one_based(f)).collect();
    let n = m.dart_count();
    // point p < n is the corner of the p-th boundary dart, n + p its side edge
    let darts_by_point: Vec<usize> = m.faces().iter().flatten().map(|d| d + 1).collect();
    let mut doc = map_summary(&m);
    let extra = json!({
        "darts": n,
        "sigma": m.sigma_cycles(),
        "alpha": m.alpha_pairs(),
        "face_darts": faces,
        "vertex_of_dart": (0..n).map(|d| m.vertex_of(d) + 1).collect::<Vec<_>>(),
        "edge_of_dart": (0..n).map(|d| m.edge_of(d) + 1).collect::<Vec<_>>(),
        "point_darts": darts_by_point,
    });
    doc.as_object_mut()
        .unwrap()
        .extend(extra.as_object().unwrap().clone());
    Ok((StatusCode::OK, Json(doc)))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CreateSession {
    map: String,
}

async fn create_session(State(app): State<Arc<AppState>>, bytes: Bytes) -> ApiResult {
    let req: CreateSession = body(&bytes)?;
    let puzzle = app.puzzle(&req.map)?;
    let id = app.next_id.fetch_add(1, Ordering::Relaxed);
    let created = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let session = Session {
        id,
        state: puzzle.solved(),
        puzzle,
        created,
    };
    let view = session.view();
    app.sessions
        .write()
        .unwrap()
        .insert(id, Arc::new(Mutex::new(session)));
    Ok((StatusCode::CREATED, Json(view)))
}

async fn get_session(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult {
    let s = app.session(&id)?;
    let view = s.lock().unwrap().view();
    Ok((StatusCode::OK, Json(view)))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MoveRequest {
    face: usize,
    #[serde(default = "one")]
    exponent: i32,
}

fn one() -> i32 {
    1
}

async fn apply_move(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
    bytes: Bytes,
) -> ApiResult {
    let s = app.session(&id)?;
    let req: MoveRequest = body(&bytes)?;
    let mut s = s.lock().unwrap();
    if req.face == 0 {
        return Err(PuzzleError::UnknownFace {
            face: 0,
            count: s.puzzle.face_count(),
        }
        .into());
    }
    let puzzle = s.puzzle.clone();
    puzzle.apply_move(&mut s.state, req.face - 1, req.exponent)?;
    Ok((StatusCode::OK, Json(s.view())))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScrambleRequest {
    seed: Option<u64>,
    length: Option<usize>,
}

async fn scramble(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
    bytes: Bytes,
) -> ApiResult {
    let s = app.session(&id)?;
    let req: ScrambleRequest = body(&bytes)?;
    let length = req.length.unwrap_or(DEFAULT_SCRAMBLE_LENGTH);
    if length > MAX_SCRAMBLE_LENGTH {
        return Err(ApiError::malformed(format!(
            "length {length} exceeds {MAX_SCRAMBLE_LENGTH}"
        )));
    }
    let mut s = s.lock().unwrap();
    let seed = req.seed.unwrap_or_else(|| {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_nanos() as u64)
            .unwrap_or(0)
    });
    let puzzle = s.puzzle.clone();
    let word = puzzle.scramble(&mut s.state, seed, length);
    let mut view = s.view();
    view["scramble"] = json!(format_moves(&word));
    Ok((StatusCode::OK, Json(view)))
}

async fn reset(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
    bytes: Bytes,
) -> ApiResult {
    let s = app.session(&id)?;
    let _: serde_json::Map<String, Value> = body(&bytes)?;
    let mut s = s.lock().unwrap();
    s.state.reset();
    Ok((StatusCode::OK, Json(s.view())))
}

async fn solve(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
    bytes: Bytes,
) -> ApiResult {
    let s = app.session(&id)?;
    let _: serde_json::Map<String, Value> = body(&bytes)?;
    let s = s.lock().unwrap();
    let word = s.puzzle.solve(&s.state)?;
    Ok((
        StatusCode::OK,
        Json(json!({
            "solution": format_moves(&word),
            "moves": moves_json(&word),
            "state": s.view(),
        })),
    ))
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/maps", get(list_maps))
        .route("/maps/{name}", get(get_map))
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/move", post(apply_move))
        .route("/sessions/{id}/scramble", post(scramble))
        .route("/sessions/{id}/reset", post(reset))
        .route("/sessions/{id}/solve", post(solve))
        .with_state(state)
}

pub fn serve(addr: &str, seed: u64) -> std::io::Result<()> {
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind(addr).await?;
        eprintln!("listening on http://{}", listener.local_addr()?);
        axum::serve(listener, router(Arc::new(AppState::new(seed)))).await
    })
}
