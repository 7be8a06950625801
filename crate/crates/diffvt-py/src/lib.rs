//! Python bindings for the `diffvt` library.
//!
//! Words cross the boundary as strings in the same textual form the CLI and
//! word files use: base-36 digits for alphabets up to 36, space-separated
//! decimal symbols beyond. Domain and capacity violations raise
//! `ValueError`, undecodable inputs raise `diffvt.DecodeError`.

use diffvt::error_model::{self, BallMode, DEFAULT_CAP};
use diffvt::{rll, seq, BurstFixed, DiffSvt, DiffVt, Error, MarkerCode, Word};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

create_exception!(
    diffvt,
    DecodeError,
    PyException,
    "Raised when a received word cannot be decoded to a codeword."
);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Domain(_) | Error::Capacity(_) => PyValueError::new_err(e.to_string()),
        Error::Decode(_) => DecodeError::new_err(e.to_string()),
        Error::InternalInvariant(_) => PyRuntimeError::new_err(e.to_string()),
    }
}

fn parse_word(q: u32, text: &str) -> PyResult<Word> {
    Word::parse(q, text).map_err(to_py)
}

fn parse_words(q: u32, texts: &[String]) -> PyResult<Vec<Word>> {
    texts.iter().map(|t| parse_word(q, t)).collect()
}

fn strings(words: Vec<Word>) -> Vec<String> {
    words.into_iter().map(|w| w.to_string()).collect()
}

fn ball_mode(mode: &str) -> PyResult<BallMode> {
    match mode {
        "exact" => Ok(BallMode::Exact),
        "at_most" => Ok(BallMode::AtMost),
        _ => Err(PyValueError::new_err(format!(
            "mode must be \"exact\" or \"at_most\", got {mode:?}"
        ))),
    }
}

/// Outcome of a single-error decode, with the branch tag and the
/// intermediate quantities the decoder branched on.
#[pyclass(frozen, get_all)]
struct DecodeReport {
    codeword: String,
    case: String,
    delta: Option<u64>,
    s: Option<u64>,
    gamma: Option<u16>,
    position: Option<usize>,
}

#[pymethods]
impl DecodeReport {
    fn __repr__(&self) -> String {
        format!(
            "DecodeReport(codeword='{}', case='{}', delta={:?}, s={:?}, gamma={:?}, position={:?})",
            self.codeword, self.case, self.delta, self.s, self.gamma, self.position
        )
    }
}

/// Differential VT code: corrects one deletion or one insertion.
#[pyclass(name = "DiffVt", frozen)]
struct PyDiffVt {
    inner: DiffVt,
}

#[pymethods]
impl PyDiffVt {
    #[new]
    #[pyo3(signature = (q, n, a = 0))]
    fn new(q: u32, n: usize, a: u64) -> PyResult<Self> {
        Ok(Self { inner: DiffVt::new(q, n, a).map_err(to_py)? })
    }

    #[getter]
    fn q(&self) -> u32 {
        self.inner.q()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn a(&self) -> u64 {
        self.inner.a()
    }

    fn is_member(&self, word: &str) -> PyResult<bool> {
        self.inner.is_member(&parse_word(self.inner.q(), word)?).map_err(to_py)
    }

    fn encode(&self, message: &str) -> PyResult<String> {
        let cw = self.inner.encode(&parse_word(self.inner.q(), message)?).map_err(to_py)?;
        Ok(cw.to_string())
    }

    fn decode(&self, received: &str) -> PyResult<DecodeReport> {
        let rep = self.inner.decode(&parse_word(self.inner.q(), received)?).map_err(to_py)?;
        Ok(DecodeReport {
            codeword: rep.recovered.to_string(),
            case: rep.case.to_string(),
            delta: rep.delta,
            s: rep.s,
            gamma: rep.gamma,
            position: rep.position,
        })
    }

    fn extract_message(&self, codeword: &str) -> PyResult<String> {
        let msg =
            self.inner.extract_message(&parse_word(self.inner.q(), codeword)?).map_err(to_py)?;
        Ok(msg.to_string())
    }

    fn message_len(&self) -> PyResult<usize> {
        self.inner.message_len().map_err(to_py)
    }

    fn syndrome_positions(&self) -> PyResult<Vec<usize>> {
        self.inner.syndrome_positions().map_err(to_py)
    }

    #[pyo3(signature = (cap = None))]
    fn enumerate(&self, cap: Option<u64>) -> PyResult<Vec<String>> {
        Ok(strings(self.inner.enumerate_with_cap(cap.unwrap_or(DEFAULT_CAP)).map_err(to_py)?))
    }

    fn __repr__(&self) -> String {
        format!("DiffVt(q={}, n={}, a={})", self.inner.q(), self.inner.n(), self.inner.a())
    }
}

/// Differential shifted VT code: corrects one deletion whose position is
/// known to lie in a window of at most `p` consecutive positions.
#[pyclass(name = "DiffSvt", frozen)]
struct PyDiffSvt {
    inner: DiffSvt,
}

#[pymethods]
impl PyDiffSvt {
    #[new]
    #[pyo3(signature = (q, n, p, a = 0, b = 0))]
    fn new(q: u32, n: usize, p: usize, a: u64, b: u64) -> PyResult<Self> {
        Ok(Self { inner: DiffSvt::new(q, n, p, a, b).map_err(to_py)? })
    }

    #[getter]
    fn q(&self) -> u32 {
        self.inner.q()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn p(&self) -> usize {
        self.inner.window()
    }

    #[getter]
    fn a(&self) -> u64 {
        self.inner.a()
    }

    #[getter]
    fn b(&self) -> u64 {
        self.inner.b()
    }

    fn is_member(&self, word: &str) -> PyResult<bool> {
        self.inner.is_member(&parse_word(self.inner.q(), word)?).map_err(to_py)
    }

    fn encode(&self, message: &str) -> PyResult<String> {
        let cw = self.inner.encode(&parse_word(self.inner.q(), message)?).map_err(to_py)?;
        Ok(cw.to_string())
    }

    fn decode_windowed(&self, received: &str, lo: usize, hi: usize) -> PyResult<String> {
        let cw = self
            .inner
            .decode_windowed(&parse_word(self.inner.q(), received)?, lo, hi)
            .map_err(to_py)?;
        Ok(cw.to_string())
    }

    fn extract_message(&self, codeword: &str) -> PyResult<String> {
        let msg =
            self.inner.extract_message(&parse_word(self.inner.q(), codeword)?).map_err(to_py)?;
        Ok(msg.to_string())
    }

    fn message_len(&self) -> PyResult<usize> {
        self.inner.message_len().map_err(to_py)
    }

    #[pyo3(signature = (cap = None))]
    fn enumerate(&self, cap: Option<u64>) -> PyResult<Vec<String>> {
        Ok(strings(self.inner.enumerate_with_cap(cap.unwrap_or(DEFAULT_CAP)).map_err(to_py)?))
    }

    fn __repr__(&self) -> String {
        format!(
            "DiffSvt(q={}, n={}, p={}, a={}, b={})",
            self.inner.q(),
            self.inner.n(),
            self.inner.window(),
            self.inner.a(),
            self.inner.b()
        )
    }
}

/// Interleaved code correcting a burst of exactly `t` consecutive deletions.
#[pyclass(name = "BurstFixed", frozen)]
struct PyBurstFixed {
    inner: BurstFixed,
}

#[pymethods]
impl PyBurstFixed {
    #[new]
    #[pyo3(signature = (q, n, t, a1 = 0, a2 = 0, b = 0, ell = None, p = None))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        q: u32,
        n: usize,
        t: usize,
        a1: u64,
        a2: u64,
        b: u64,
        ell: Option<usize>,
        p: Option<usize>,
    ) -> PyResult<Self> {
        let inner = match (ell, p) {
            (Some(ell), Some(p)) => {
                BurstFixed::with_limits(q, n, t, a1, a2, b, ell, p).map_err(to_py)?
            }
            (None, None) => BurstFixed::for_encoder(q, n, t, a1, a2, b).map_err(to_py)?,
            _ => {
                return Err(PyValueError::new_err("ell and p must be given together or not at all"))
            }
        };
        Ok(Self { inner })
    }

    #[getter]
    fn q(&self) -> u32 {
        self.inner.q()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn t(&self) -> usize {
        self.inner.t()
    }

    #[getter]
    fn run_bound(&self) -> usize {
        self.inner.run_bound()
    }

    #[getter]
    fn window(&self) -> usize {
        self.inner.window()
    }

    fn is_member(&self, word: &str) -> PyResult<bool> {
        self.inner.is_member(&parse_word(self.inner.q(), word)?).map_err(to_py)
    }

    fn encode(&self, message: &str) -> PyResult<String> {
        let cw = self.inner.encode(&parse_word(self.inner.q(), message)?).map_err(to_py)?;
        Ok(cw.to_string())
    }

    fn decode(&self, received: &str) -> PyResult<String> {
        let cw = self.inner.decode(&parse_word(self.inner.q(), received)?).map_err(to_py)?;
        Ok(cw.to_string())
    }

    fn decode_message(&self, received: &str) -> PyResult<String> {
        let msg =
            self.inner.decode_message(&parse_word(self.inner.q(), received)?).map_err(to_py)?;
        Ok(msg.to_string())
    }

    fn extract_message(&self, codeword: &str) -> PyResult<String> {
        let msg =
            self.inner.extract_message(&parse_word(self.inner.q(), codeword)?).map_err(to_py)?;
        Ok(msg.to_string())
    }

    fn message_len(&self) -> PyResult<usize> {
        self.inner.message_len().map_err(to_py)
    }

    #[pyo3(signature = (cap = None))]
    fn enumerate(&self, cap: Option<u64>) -> PyResult<Vec<String>> {
        Ok(strings(self.inner.enumerate_with_cap(cap.unwrap_or(DEFAULT_CAP)).map_err(to_py)?))
    }

    fn __repr__(&self) -> String {
        format!(
            "BurstFixed(q={}, n={}, t={}, ell={}, p={})",
            self.inner.q(),
            self.inner.n(),
            self.inner.t(),
            self.inner.run_bound(),
            self.inner.window()
        )
    }
}

/// Marker-based systematic code correcting one burst of at most two
/// deletions; bursts inside the data part additionally need the position
/// narrowed to a window of at most `p` consecutive positions.
#[pyclass(name = "MarkerCode", frozen)]
struct PyMarkerCode {
    inner: MarkerCode,
}

#[pymethods]
impl PyMarkerCode {
    #[new]
    fn new(q: u32, k: usize, p: usize) -> PyResult<Self> {
        Ok(Self { inner: MarkerCode::new(q, k, p).map_err(to_py)? })
    }

    #[getter]
    fn q(&self) -> u32 {
        self.inner.q()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.message_len()
    }

    #[getter]
    fn window(&self) -> usize {
        self.inner.window()
    }

    fn is_member(&self, word: &str) -> PyResult<bool> {
        self.inner.is_member(&parse_word(self.inner.q(), word)?).map_err(to_py)
    }

    fn encode(&self, message: &str) -> PyResult<String> {
        let cw = self.inner.encode(&parse_word(self.inner.q(), message)?).map_err(to_py)?;
        Ok(cw.to_string())
    }

    #[pyo3(signature = (received, window = None))]
    fn decode(&self, received: &str, window: Option<(usize, usize)>) -> PyResult<String> {
        let msg =
            self.inner.decode(&parse_word(self.inner.q(), received)?, window).map_err(to_py)?;
        Ok(msg.to_string())
    }

    fn __repr__(&self) -> String {
        format!(
            "MarkerCode(q={}, k={}, p={})",
            self.inner.q(),
            self.inner.message_len(),
            self.inner.window()
        )
    }
}

/// Difference transform: `y[i] = x[i] - x[i+1] mod q`, `y[n-1] = x[n-1]`.
#[pyfunction]
fn diff(q: u32, word: &str) -> PyResult<String> {
    Ok(seq::diff(&parse_word(q, word)?).map_err(to_py)?.to_string())
}

/// Inverse of `diff`: `x[i] = sum(y[i:]) mod q`.
#[pyfunction]
fn diff_inv(q: u32, word: &str) -> PyResult<String> {
    Ok(seq::diff_inv(&parse_word(q, word)?).map_err(to_py)?.to_string())
}

/// Scales every symbol by `p` mod q; requires `gcd(p, q) == 1`.
#[pyfunction]
fn p_transform(q: u32, word: &str, p: u32) -> PyResult<String> {
    Ok(seq::p_transform(&parse_word(q, word)?, p).map_err(to_py)?.to_string())
}

/// VT syndrome `sum(i * w[i-1] for i in 1..=n) mod modulus`.
#[pyfunction]
fn vt_syndrome(q: u32, word: &str, modulus: u64) -> PyResult<u64> {
    seq::vt_syndrome(&parse_word(q, word)?, modulus).map_err(to_py)
}

/// Symbol sum mod `modulus`.
#[pyfunction]
fn symbol_sum(q: u32, word: &str, modulus: u64) -> PyResult<u64> {
    seq::symbol_sum(&parse_word(q, word)?, modulus).map_err(to_py)
}

/// Binary ascent indicator: bit i is 1 iff `w[i+1] >= w[i]`; length n-1.
#[pyfunction]
fn signature(q: u32, word: &str) -> PyResult<String> {
    Ok(seq::signature(&parse_word(q, word)?).map_err(to_py)?.to_string())
}

/// Length of the longest run of equal consecutive symbols.
#[pyfunction]
fn max_run(q: u32, word: &str) -> PyResult<usize> {
    Ok(rll::max_run(&parse_word(q, word)?))
}

/// All words reachable from `word` by `t` deletions or `t` insertions
/// (`mode="exact"`), or by at most `t` of either kind (`mode="at_most"`).
#[pyfunction]
#[pyo3(signature = (q, word, t, mode = "exact", cap = None))]
fn error_ball(q: u32, word: &str, t: usize, mode: &str, cap: Option<u64>) -> PyResult<Vec<String>> {
    let ball = error_model::error_ball_with_cap(
        &parse_word(q, word)?,
        t,
        ball_mode(mode)?,
        cap.unwrap_or(DEFAULT_CAP),
    )
    .map_err(to_py)?;
    Ok(ball.into_iter().map(|w| w.to_string()).collect())
}

/// Whether the error balls of `u` and `v` intersect.
#[pyfunction]
#[pyo3(signature = (q, u, v, t, mode = "exact", cap = None))]
fn confusable(q: u32, u: &str, v: &str, t: usize, mode: &str, cap: Option<u64>) -> PyResult<bool> {
    error_model::confusable_with_cap(
        &parse_word(q, u)?,
        &parse_word(q, v)?,
        t,
        ball_mode(mode)?,
        cap.unwrap_or(DEFAULT_CAP),
    )
    .map_err(to_py)
}

/// Whether a code (list of words) corrects every error the mode describes,
/// i.e. all pairwise error balls are disjoint.
#[pyfunction]
#[pyo3(signature = (q, words, t, mode = "exact", cap = None))]
fn code_is_correcting(
    q: u32,
    words: Vec<String>,
    t: usize,
    mode: &str,
    cap: Option<u64>,
) -> PyResult<bool> {
    error_model::code_is_correcting_with_cap(
        &parse_words(q, &words)?,
        t,
        ball_mode(mode)?,
        cap.unwrap_or(DEFAULT_CAP),
    )
    .map_err(to_py)
}

#[pymodule(name = "diffvt")]
fn diffvt_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDiffVt>()?;
    m.add_class::<PyDiffSvt>()?;
    m.add_class::<PyBurstFixed>()?;
    m.add_class::<PyMarkerCode>()?;
    m.add_class::<DecodeReport>()?;
    m.add_function(wrap_pyfunction!(diff, m)?)?;
    m.add_function(wrap_pyfunction!(diff_inv, m)?)?;
    m.add_function(wrap_pyfunction!(p_transform, m)?)?;
    m.add_function(wrap_pyfunction!(vt_syndrome, m)?)?;
    m.add_function(wrap_pyfunction!(symbol_sum, m)?)?;
    m.add_function(wrap_pyfunction!(signature, m)?)?;
    m.add_function(wrap_pyfunction!(max_run, m)?)?;
    m.add_function(wrap_pyfunction!(error_ball, m)?)?;
    m.add_function(wrap_pyfunction!(confusable, m)?)?;
    m.add_function(wrap_pyfunction!(code_is_correcting, m)?)?;
    m.add("DecodeError", m.py().get_type::<DecodeError>())?;
    m.add("DEFAULT_CAP", DEFAULT_CAP)?;
    Ok(())
}
