//! Python bindings for `pdlift_core`.

use std::sync::Arc;

use pdlift_core::arith::Domain;
use pdlift_core::divpow::{check_delta_axioms, dp_exists, DpStructure};
use pdlift_core::error::Error;
use pdlift_core::groebner::{buchberger_in, MonomialOrder, QuotientLength};
use pdlift_core::instance::Instance as CoreInstance;
use pdlift_core::lift::{
    gen_family as core_gen_family, lift_obstruction, verify_koblitz as core_verify_koblitz, Family, LiftingContext,
    Method, ObstructionCertificate,
};
use pdlift_core::poly::parse_poly;
use pdlift_core::poly::wp as core_wp;
use pdlift_core::poly::Polynomial as CorePolynomial;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(pdlift, PdliftError, PyException);
create_exception!(pdlift, ResourceCapError, PdliftError);

const DEFAULT_CAP: usize = 1 << 22;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::ResourceCap { .. } => ResourceCapError::new_err(e.to_string()),
        Error::Parse { .. }
        | Error::Instance { .. }
        | Error::InvalidDomain(_)
        | Error::VariableOutOfRange { .. }
        | Error::InvalidPrime(_) => PyValueError::new_err(e.to_string()),
        _ => PdliftError::new_err(e.to_string()),
    }
}

fn parse_arg<T: std::str::FromStr>(s: &str, what: &str) -> PyResult<T>
where
    T::Err: std::fmt::Display,
{
    s.parse().map_err(|e: T::Err| PyValueError::new_err(format!("bad {what} {s:?}: {e}")))
}

fn length_value(py: Python<'_>, l: QuotientLength) -> PyResult<Py<PyAny>> {
    Ok(match l {
        QuotientLength::Finite(n) => n.into_pyobject(py)?.into_any().unbind(),
        QuotientLength::Infinite => "infinite".into_pyobject(py)?.into_any().unbind(),
    })
}

/// A polynomial over `F_p`, `Q` or `Q(√d)` in `x1..xn`.
#[pyclass(frozen, eq, skip_from_py_object, module = "pdlift")]
#[derive(Clone, PartialEq)]
struct Polynomial {
    inner: CorePolynomial,
}

#[pymethods]
impl Polynomial {
    #[new]
    #[pyo3(signature = (text, nvars, domain = "fp:2"))]
    fn new(text: &str, nvars: usize, domain: &str) -> PyResult<Self> {
        let d: Domain = domain.parse().map_err(to_py)?;
        Ok(Self { inner: parse_poly(text, nvars, d).map_err(to_py)? })
    }

    #[getter]
    fn nvars(&self) -> usize {
        self.inner.nvars()
    }

    #[getter]
    fn domain(&self) -> String {
        self.inner.domain().to_string()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// `(exponents, coefficient)` pairs, coefficients as strings.
    fn terms(&self) -> Vec<(Vec<u32>, String)> {
        self.inner
            .terms()
            .map(|(m, c)| (m.exponents().to_vec(), c.to_string()))
            .collect()
    }

    fn __add__(&self, other: &Self) -> Self {
        Self { inner: &self.inner + &other.inner }
    }

    fn __sub__(&self, other: &Self) -> Self {
        Self { inner: &self.inner - &other.inner }
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self { inner: &self.inner * &other.inner }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({:?}, {}, {:?})", self.inner.to_string(), self.inner.nvars(), self.domain())
    }
}

/// A framed ideal read from the instance text format.
#[pyclass(frozen, skip_from_py_object, module = "pdlift")]
#[derive(Clone)]
struct Instance {
    inner: CoreInstance,
}

#[pymethods]
impl Instance {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Self { inner: text.parse().map_err(to_py)? })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(Self { inner: CoreInstance::load(path).map_err(to_py)? })
    }

    #[getter]
    fn nvars(&self) -> usize {
        self.inner.nvars
    }

    #[getter]
    fn domain(&self) -> String {
        self.inner.domain.to_string()
    }

    #[getter]
    fn bounds(&self) -> Option<Vec<u32>> {
        self.inner.bounds.clone()
    }

    /// `(p, r, e)` if the instance carries a lifting context.
    #[getter]
    fn context(&self) -> Option<(u64, u32, u64)> {
        self.inner.context.map(|c| (c.p(), c.r(), c.e()))
    }

    #[getter]
    fn gens(&self) -> Vec<Polynomial> {
        self.inner.gens.iter().map(|g| Polynomial { inner: g.clone() }).collect()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

/// `w_p(f)`, the integral polynomial with `f^p = Σ a_i^p x_i^p + p·w_p(f)`.
#[pyfunction]
fn wp(poly: &Polynomial, p: u64) -> PyResult<Polynomial> {
    Ok(Polynomial { inner: core_wp(&poly.inner, p).map_err(to_py)? })
}

/// Decides whether the frame carries a divided power structure. With
/// `samples > 0` and a positive verdict, also sweeps the axioms.
#[pyfunction]
#[pyo3(signature = (instance, cap = DEFAULT_CAP, samples = 0, seed = 0))]
fn dp_check<'py>(
    py: Python<'py>,
    instance: &Instance,
    cap: usize,
    samples: usize,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let (frame, ex, sweep) = py
        .detach(|| -> Result<_, Error> {
            let frame = Arc::new(instance.inner.frame_spec()?.build(cap)?);
            let ex = dp_exists(&frame)?;
            let sweep = if ex.verdict && samples > 0 {
                let dp = DpStructure::canonical(frame.clone(), None)?;
                Some(check_delta_axioms(&dp, samples, seed)?)
            } else {
                None
            };
            Ok((frame, ex, sweep))
        })
        .map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("p", ex.p)?;
    d.set_item("length", frame.length())?;
    d.set_item("verdict", ex.verdict)?;
    d.set_item("failing_generator", ex.failing_generator)?;
    d.set_item("remainder", ex.certificate.map(|c| c.remainder.to_string()))?;
    d.set_item("axioms_passed", sweep.map(|s| s.passed))?;
    Ok(d)
}

/// Runs the lifting obstruction check on the first generator (or `poly`).
#[pyfunction]
#[pyo3(signature = (instance, method = "auto", cap = DEFAULT_CAP, context = None, poly = None))]
fn lift_check<'py>(
    py: Python<'py>,
    instance: &Instance,
    method: &str,
    cap: usize,
    context: Option<(u64, u32, u64)>,
    poly: Option<&Polynomial>,
) -> PyResult<Bound<'py, PyDict>> {
    let method: Method = parse_arg(method, "method")?;
    let ctx = match context {
        Some((p, r, e)) => LiftingContext::new(p, r, e).map_err(to_py)?,
        None => instance
            .inner
            .context
            .ok_or_else(|| PyValueError::new_err("instance has no context; pass context=(p, r, e)"))?,
    };
    let f0 = match poly {
        Some(f) => f.inner.clone(),
        None => instance
            .inner
            .gens
            .first()
            .cloned()
            .ok_or_else(|| PyValueError::new_err("instance has no generators"))?,
    };
    let rep = py
        .detach(|| lift_obstruction(&f0, &instance.inner.frame_spec()?, &ctx, method, cap))
        .map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("context", (ctx.p(), ctx.r(), ctx.e()))?;
    d.set_item("method", rep.method.to_string())?;
    d.set_item("verdict", rep.verdict.to_string())?;
    d.set_item("floor_holds", rep.floor.holds)?;
    d.set_item("bounds_ok", rep.bounds_ok)?;
    let cert = match &rep.certificate {
        None => None,
        Some(ObstructionCertificate::Remainder(m)) => {
            let c = PyDict::new(py);
            c.set_item("kind", "remainder")?;
            c.set_item("remainder", m.remainder.to_string())?;
            Some(c)
        }
        Some(ObstructionCertificate::Alpha(a)) => {
            let c = PyDict::new(py);
            c.set_item("kind", "alpha")?;
            c.set_item("alpha", a.alpha.to_string())?;
            c.set_item("coefficient", a.coefficient.to_string())?;
            c.set_item("target_monomial", a.target_monomial.to_string())?;
            c.set_item("symbol_exponents", a.symbol_exponents.to_vec())?;
            Some(c)
        }
    };
    d.set_item("certificate", cert)?;
    Ok(d)
}

/// Links `(f)` inside the ambient frame (bounds only) of the instance.
#[pyfunction]
#[pyo3(signature = (instance, poly = None, cap = DEFAULT_CAP))]
fn link<'py>(
    py: Python<'py>,
    instance: &Instance,
    poly: Option<&Polynomial>,
    cap: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let f = match poly {
        Some(f) => f.inner.clone(),
        None => instance
            .inner
            .gens
            .first()
            .cloned()
            .ok_or_else(|| PyValueError::new_err("instance has no generators; pass poly"))?,
    };
    let mut ambient = instance.inner.clone();
    ambient.gens.clear();
    let l = py
        .detach(|| ambient.frame_spec()?.build(cap)?.link(&f))
        .map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("dim_b0", l.dim_b0)?;
    d.set_item("dim_annihilator", l.dim_annihilator)?;
    d.set_item("dim_a0", l.dim_a0)?;
    d.set_item("dim_c0", l.dim_c0)?;
    d.set_item("socle_dim", l.socle_dim)?;
    d.set_item("gorenstein", l.gorenstein)?;
    d.set_item("generators", l.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>())?;
    Ok(d)
}

/// Length of the quotient via a Gröbner basis; `"infinite"` if not Artinian.
#[pyfunction]
#[pyo3(signature = (instance, order = None, cap = DEFAULT_CAP))]
fn length(py: Python<'_>, instance: &Instance, order: Option<&str>, cap: usize) -> PyResult<Py<PyAny>> {
    let order = match order {
        Some(o) => parse_arg(o, "order")?,
        None => instance.inner.order.unwrap_or(MonomialOrder::Degrevlex),
    };
    let inst = &instance.inner;
    let len = py
        .detach(|| buchberger_in(inst.domain, inst.nvars, &inst.ideal_generators(), order)?.quotient_length(cap))
        .map_err(to_py)?;
    length_value(py, len)
}

/// Builds a member of a named family. `index` is `r` for `hypersurface-q`
/// and `gorenstein-witness`, `n` for `direct-system`, ignored for `quadratic`.
#[pyfunction]
#[pyo3(signature = (family, p, index = 1, cap = DEFAULT_CAP))]
fn gen_family(family: &str, p: u64, index: u32, cap: usize) -> PyResult<Instance> {
    let family: Family = parse_arg(family, "family")?;
    Ok(Instance { inner: core_gen_family(family, p, index, cap).map_err(to_py)? })
}

/// Re-runs the Koblitz example end to end.
#[pyfunction]
fn verify_koblitz(py: Python<'_>) -> PyResult<Bound<'_, PyDict>> {
    let rep = py.detach(core_verify_koblitz).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("dp", rep.dp_exists)?;
    d.set_item("obstructed", rep.obstructed)?;
    for (key, lens) in [("len_char2", rep.len_char2), ("len_char0", rep.len_char0)] {
        let l = PyDict::new(py);
        l.set_item("degrevlex", length_value(py, lens[0])?)?;
        l.set_item("lex", length_value(py, lens[1])?)?;
        d.set_item(key, l)?;
    }
    d.set_item("passed", rep.passed)?;
    Ok(d)
}

#[pymodule]
fn pdlift(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("PdliftError", m.py().get_type::<PdliftError>())?;
    m.add("ResourceCapError", m.py().get_type::<ResourceCapError>())?;
    m.add_class::<Polynomial>()?;
    m.add_class::<Instance>()?;
    m.add_function(wrap_pyfunction!(wp, m)?)?;
    m.add_function(wrap_pyfunction!(dp_check, m)?)?;
    m.add_function(wrap_pyfunction!(lift_check, m)?)?;
    m.add_function(wrap_pyfunction!(link, m)?)?;
    m.add_function(wrap_pyfunction!(length, m)?)?;
    m.add_function(wrap_pyfunction!(gen_family, m)?)?;
    m.add_function(wrap_pyfunction!(verify_koblitz, m)?)?;
    Ok(())
}
