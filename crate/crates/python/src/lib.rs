//! Python bindings: fields, Laurent series in `u = 1/T`, p-adic exponents,
//! zeta values and the difference-equation checker.

use goss_core::cli::parse_poly;
use goss_core::diffop::{apply_l, rhs_neighbors, verify_main, Verdict};
use goss_core::sfun::{bracket_pow, unit_pow_binomial, unit_pow_digits};
use goss_core::zeta::{goss_special_direct, goss_special_recurrence, hurwitz_goss};
use goss_core::{Error, EvalOptions, FieldSpec, HurwitzParams, LaurentSeries, PadicInt, ZetaSign};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn options(sign: &str, parallel: bool) -> PyResult<EvalOptions> {
    let sign: ZetaSign = sign.parse().map_err(py_err)?;
    Ok(EvalOptions {
        sign,
        parallel,
        ..EvalOptions::default()
    })
}

#[pyclass(name = "Field", frozen)]
struct PyField(FieldSpec);

#[pymethods]
impl PyField {
    /// `Field("3")`, `Field("2^2")` or `Field("2^2:1,1,1")`.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        FieldSpec::parse(spec).map(PyField).map_err(py_err)
    }

    #[getter]
    fn p(&self) -> u32 {
        self.0.p()
    }

    #[getter]
    fn e(&self) -> u32 {
        self.0.e()
    }

    #[getter]
    fn q(&self) -> u32 {
        self.0.q()
    }

    #[getter]
    fn modulus(&self) -> Vec<u32> {
        self.0.modulus().to_vec()
    }

    /// `sum_{x in F_q} x^i` as its coefficient vector.
    fn power_sum(&self, i: u64) -> Vec<u32> {
        self.0.coeffs(self.0.power_sum(i))
    }

    fn __repr__(&self) -> String {
        format!("Field({}^{})", self.0.p(), self.0.e())
    }
}

#[pyclass(name = "Series", frozen)]
struct PySeries(LaurentSeries);

#[pymethods]
impl PySeries {
    /// Parses a Laurent polynomial in `T`, exact to `O(u^prec)`.
    #[staticmethod]
    fn poly(field: &PyField, text: &str, prec: i64) -> PyResult<Self> {
        parse_poly(text, &field.0, prec).map(PySeries).map_err(py_err)
    }

    #[staticmethod]
    fn from_json(field: &PyField, text: &str) -> PyResult<Self> {
        let json = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        LaurentSeries::from_json(&field.0, &json).map(PySeries).map_err(py_err)
    }

    #[getter]
    fn prec(&self) -> i64 {
        self.0.prec()
    }

    #[getter]
    fn val(&self) -> Option<i64> {
        self.0.val()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Nonzero terms as `(exponent of u, coefficient vector)` pairs.
    fn terms(&self) -> Vec<(i64, Vec<u32>)> {
        self.0.terms().map(|(j, c)| (j, self.0.field().coeffs(c))).collect()
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0.to_json()).expect("series JSON")
    }

    fn __add__(&self, other: &PySeries) -> PyResult<Self> {
        self.0.try_add(&other.0).map(PySeries).map_err(py_err)
    }

    fn __sub__(&self, other: &PySeries) -> PyResult<Self> {
        self.0.try_sub(&other.0).map(PySeries).map_err(py_err)
    }

    fn __mul__(&self, other: &PySeries) -> PyResult<Self> {
        self.0.try_mul(&other.0).map(PySeries).map_err(py_err)
    }

    fn __eq__(&self, other: &PySeries) -> bool {
        self.0 == other.0
    }

    fn invert(&self) -> PyResult<Self> {
        self.0.invert().map(PySeries).map_err(py_err)
    }

    fn one_unit_part(&self) -> PyResult<Self> {
        self.0.one_unit_part().map(PySeries).map_err(py_err)
    }

    /// `<self>^s`.
    fn bracket_pow(&self, s: &PyPadic) -> PyResult<Self> {
        bracket_pow(&self.0, &s.0).map(PySeries).map_err(py_err)
    }

    /// `self^s` for a 1-unit by the binomial series, or by the digit product.
    #[pyo3(signature = (s, digits_route = false))]
    fn unit_pow(&self, s: &PyPadic, digits_route: bool) -> PyResult<Self> {
        let r = if digits_route {
            unit_pow_digits(&self.0, &s.0)
        } else {
            unit_pow_binomial(&self.0, &s.0)
        };
        r.map(PySeries).map_err(py_err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Series({})", self.0)
    }
}

#[pyclass(name = "Padic", frozen)]
struct PyPadic(PadicInt);

#[pymethods]
impl PyPadic {
    /// A decimal integer or a digit list `digits:d0,d1,...`.
    #[new]
    #[pyo3(signature = (text, p, digits = 32))]
    fn new(text: &str, p: u32, digits: usize) -> PyResult<Self> {
        PadicInt::parse(text, p, digits).map(PyPadic).map_err(py_err)
    }

    #[getter]
    fn digits(&self) -> Vec<u32> {
        self.0.digits().to_vec()
    }

    fn neg(&self) -> Self {
        PyPadic(self.0.neg())
    }

    fn add_int(&self, i: u64) -> Self {
        PyPadic(self.0.add_int(i))
    }

    fn binom_mod_p(&self, j: u64) -> PyResult<u32> {
        self.0.binom_mod_p(j).map_err(py_err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

/// `zeta(-n)` as its coefficient vectors in `T`, lowest degree first.
#[pyfunction]
#[pyo3(signature = (field, n, direct = false))]
fn special(field: &PyField, n: u64, direct: bool) -> PyResult<Vec<Vec<u32>>> {
    let f = &field.0;
    let v = if direct {
        goss_special_direct(n, f, &EvalOptions::default())
    } else {
        goss_special_recurrence(n, f)
    }
    .map_err(py_err)?;
    let deg = v.val().map_or(0, |v| -v);
    Ok((0..=deg)
        .map(|k| f.coeffs(v.coeff(-k).unwrap_or(goss_core::FqElem::ZERO)))
        .collect())
}

/// `zeta(s0, s, a, z)` to `O(u^prec)` with its cutoff level.
#[pyfunction]
#[pyo3(signature = (s0, s, a, z, prec, sign = "proof"))]
fn eval_zeta(
    py: Python<'_>,
    s0: &PySeries,
    s: &PyPadic,
    a: &PySeries,
    z: i64,
    prec: i64,
    sign: &str,
) -> PyResult<(PySeries, u32)> {
    let opts = options(sign, true)?;
    let params = HurwitzParams::new(&a.0, z, prec).map_err(py_err)?;
    let (v, meta) = py
        .detach(|| hurwitz_goss(&s0.0, &s.0, &params, &opts))
        .map_err(py_err)?;
    Ok((PySeries(v), meta.l_star))
}

/// `L[zeta(1/T, s, a, 0)]` to `O(u^prec)`.
#[pyfunction]
#[pyo3(signature = (a, s, prec, sign = "proof"))]
fn apply_operator_l(py: Python<'_>, a: &PySeries, s: &PyPadic, prec: i64, sign: &str) -> PyResult<PySeries> {
    let opts = options(sign, true)?;
    py.detach(|| apply_l(&a.0, &s.0, prec, &opts))
        .map(|e| PySeries(e.value))
        .map_err(py_err)
}

/// `sum_{alpha in F_q} <a + alpha>^{-s}` to `O(u^prec)`.
#[pyfunction]
fn neighbor_sum(a: &PySeries, s: &PyPadic, prec: i64) -> PyResult<PySeries> {
    rhs_neighbors(&a.0, &s.0, prec).map(PySeries).map_err(py_err)
}

/// Returns `(verdict, first differing exponent or None, lhs, rhs)` with
/// verdict one of `"match"`, `"mismatch"`, `"inconclusive"`.
#[pyfunction]
#[pyo3(signature = (a, s, prec, sign = "proof"))]
fn verify(
    py: Python<'_>,
    a: &PySeries,
    s: &PyPadic,
    prec: i64,
    sign: &str,
) -> PyResult<(&'static str, Option<i64>, PySeries, PySeries)> {
    let opts = options(sign, true)?;
    let r = py.detach(|| verify_main(&a.0, &s.0, prec, &opts)).map_err(py_err)?;
    let (verdict, first) = match r.verdict {
        Verdict::Match => ("match", None),
        Verdict::Mismatch { first_exponent } => ("mismatch", Some(first_exponent)),
        Verdict::Inconclusive { .. } => ("inconclusive", None),
    };
    Ok((verdict, first, PySeries(r.lhs), PySeries(r.rhs)))
}

#[pymodule]
fn goss_zeta(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PySeries>()?;
    m.add_class::<PyPadic>()?;
    m.add_function(wrap_pyfunction!(special, m)?)?;
    m.add_function(wrap_pyfunction!(eval_zeta, m)?)?;
    m.add_function(wrap_pyfunction!(apply_operator_l, m)?)?;
    m.add_function(wrap_pyfunction!(neighbor_sum, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
