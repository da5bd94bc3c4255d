//! A scripted completion server on a local port, for tests and demos.

use std::io::{BufRead, BufReader, Read, Write};
use std::net::{Shutdown, SocketAddr, TcpListener, TcpStream};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::thread::{self, JoinHandle};
use std::time::{Duration, Instant};

use crate::template::FENCE;

/// What the server does with one request.
#[derive(Debug, Clone, PartialEq)]
pub enum MockReply {
    /// A 200 reply carrying this completion text.
    Text(String),
    /// Replies with the k-th fenced block of the prompt (zero based).
    Echo(usize),
    /// An empty reply with this status code.
    Status(u16),
    /// A 200 reply whose body is not JSON.
    Malformed,
    /// Holds the connection open this long, then closes it without replying.
    Hang(Duration),
    /// Closes the connection without replying.
    Close,
}

struct Shared {
    script: Vec<MockReply>,
    served: AtomicUsize,
    prompts: Mutex<Vec<String>>,
    stop: AtomicBool,
}

/// Serves the script in order, cycling when it runs out. Stops on drop.
pub struct MockServer {
    addr: SocketAddr,
    shared: Arc<Shared>,
    acceptor: Option<JoinHandle<()>>,
}

impl MockServer {
    pub fn start(script: Vec<MockReply>) -> std::io::Result<Self> {
        assert!(!script.is_empty(), "mock script must not be empty");
        let listener = TcpListener::bind("127.0.0.1:0")?;
        let addr = listener.local_addr()?;
        let shared =
            Arc::new(Shared { script, served: 0.into(), prompts: Mutex::new(Vec::new()), stop: false.into() });
        let state = Arc::clone(&shared);
        let acceptor = thread::spawn(move || {
            for stream in listener.incoming() {
                if state.stop.load(Ordering::SeqCst) {
                    break;
                }
                if let Ok(stream) = stream {
                    let state = Arc::clone(&state);
                    thread::spawn(move || {
                        let _ = serve(stream, &state);
                    });
                }
            }
        });
        Ok(Self { addr, shared, acceptor: Some(acceptor) })
    }

    pub fn url(&self) -> String {
        format!("http://{}/v1/completions", self.addr)
    }

    /// Prompts received so far, in arrival order.
    pub fn prompts(&self) -> Vec<String> {
        self.shared.prompts.lock().unwrap().clone()
    }

    pub fn requests(&self) -> usize {
        self.shared.served.load(Ordering::SeqCst)
    }
}

impl Drop for MockServer {
    fn drop(&mut self) {
        self.shared.stop.store(true, Ordering::SeqCst);
        let _ = TcpStream::connect(self.addr);
        if let Some(handle) = self.acceptor.take() {
            let _ = handle.join();
        }
    }
}

fn serve(stream: TcpStream, state: &Shared) -> std::io::Result<()> {
    let mut reader = BufReader::new(stream.try_clone()?);
    let mut length = 0usize;
    let mut line = String::new();
    loop {
        line.clear();
        if reader.read_line(&mut line)? == 0 {
            return Ok(());
        }
        let header = line.trim_end();
        if header.is_empty() {
            break;
        }
        if let Some((name, value)) = header.split_once(':') {
            if name.eq_ignore_ascii_case("content-length") {
                length = value.trim().parse().unwrap_or(0);
            }
        }
    }
    let mut body = vec![0; length];
    reader.read_exact(&mut body)?;
    let prompt = serde_json::from_slice::<serde_json::Value>(&body)
        .ok()
        .and_then(|v| v.get("prompt").and_then(|p| p.as_str()).map(String::from))
        .unwrap_or_default();
    state.prompts.lock().unwrap().push(prompt.clone());
    let n = state.served.fetch_add(1, Ordering::SeqCst);

    let mut stream = stream;
    match &state.script[n % state.script.len()] {
        MockReply::Text(text) => respond(&mut stream, 200, &serde_json::json!({ "text": text }).to_string()),
        MockReply::Echo(k) => {
            let text = match fenced_blocks(&prompt).get(*k) {
                Some(block) => format!("Here is a level.\n{FENCE}\n{block}{FENCE}\n"),
                None => "I have no level for you.".to_string(),
            };
            respond(&mut stream, 200, &serde_json::json!({ "text": text }).to_string())
        }
        MockReply::Status(code) => respond(&mut stream, *code, "{}"),
        MockReply::Malformed => respond(&mut stream, 200, "<html>not json"),
        MockReply::Hang(duration) => {
            let until = Instant::now() + *duration;
            while Instant::now() < until && !state.stop.load(Ordering::SeqCst) {
                thread::sleep(Duration::from_millis(10));
            }
            stream.shutdown(Shutdown::Both)
        }
        MockReply::Close => stream.shutdown(Shutdown::Both),
    }
}

fn respond(stream: &mut TcpStream, status: u16, body: &str) -> std::io::Result<()> {
    write!(
        stream,
        "HTTP/1.1 {status} Mock\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
        body.len()
    )?;
    stream.flush()
}

/// Bodies of the blocks enclosed by fence lines, each row ending in a newline.
fn fenced_blocks(text: &str) -> Vec<String> {
    let mut blocks = Vec::new();
    let mut current: Option<String> = None;
    for line in text.lines() {
        if line.trim_start().starts_with(FENCE) {
            match current.take() {
                Some(block) => blocks.push(block),
                None => current = Some(String::new()),
            }
        } else if let Some(block) = current.as_mut() {
            block.push_str(line);
            block.push('\n');
        }
    }
    blocks
}
