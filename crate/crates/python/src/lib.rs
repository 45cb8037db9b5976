//! Python bindings. Elements cross the boundary either as `Element`
//! objects or as literals in the rendering grammar, so anything printed
//! by Python can be passed back in.

use std::sync::Arc;

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use seidel_core::catalog::{self, SpecBundle};
use seidel_core::literal::{parse_element, parse_gamma};
use seidel_core::num::{format_rational, parse_rational, Rational};
use seidel_core::quantum::{QhDegree, QhElement, RingSpec};
use seidel_core::seidel::{self as calc, describe_witness, InvertOutcome, OrderBound};
use seidel_core::verify;

create_exception!(seidel, SeidelError, PyException);

fn err(e: impl std::fmt::Display) -> PyErr {
    SeidelError::new_err(e.to_string())
}

#[derive(FromPyObject)]
enum Energy {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Energy {
    fn rational(&self) -> PyResult<Rational> {
        let text = match self {
            Energy::Int(n) => n.to_string(),
            Energy::Float(f) => format!("{f}"),
            Energy::Text(s) => s.clone(),
        };
        parse_rational(&text).map_err(|e| PyValueError::new_err(e.to_string()))
    }
}

#[derive(FromPyObject)]
enum ElementArg<'py> {
    Element(PyRef<'py, Element>),
    Text(String),
}

/// A quantum homology ring with its catalogued loops.
#[pyclass(frozen)]
struct Ring {
    bundle: SpecBundle,
}

impl Ring {
    fn spec(&self) -> &Arc<RingSpec> {
        &self.bundle.spec
    }

    fn wrap(&self, value: QhElement) -> Element {
        Element {
            spec: self.spec().clone(),
            value,
        }
    }

    fn arg(&self, x: &ElementArg) -> PyResult<QhElement> {
        match x {
            ElementArg::Element(e) if e.spec == *self.spec() => Ok(e.value.clone()),
            ElementArg::Element(_) => Err(PyValueError::new_err("element belongs to a different ring")),
            ElementArg::Text(s) => parse_element(self.spec(), s).map_err(|e| PyValueError::new_err(e.to_string())),
        }
    }

    fn find_loop(&self, name: &str) -> PyResult<&calc::LoopElement> {
        self.bundle
            .loop_named(name)
            .ok_or_else(|| PyValueError::new_err(format!("ring has no loop `{name}`")))
    }
}

#[pymethods]
impl Ring {
    /// A builtin ring: cp1, cp2, cp1xcp1[:lambda], f2-as-s2xs2[:lambda].
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        Ok(Ring {
            bundle: catalog::builtin(name).map_err(err)?,
        })
    }

    /// Loads a spec file.
    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(Ring {
            bundle: catalog::load_spec_file(path).map_err(err)?,
        })
    }

    /// Parses spec-file text.
    #[staticmethod]
    fn from_toml(text: &str) -> PyResult<Self> {
        Ok(Ring {
            bundle: catalog::load_spec_str(text).map_err(err)?,
        })
    }

    #[getter]
    fn name(&self) -> String {
        self.spec().name().to_string()
    }

    #[getter]
    fn loops(&self) -> Vec<String> {
        self.bundle.loops.iter().map(|l| l.name().to_string()).collect()
    }

    #[getter]
    fn basis(&self) -> Vec<String> {
        self.spec().basis().classes().iter().map(|c| c.name.clone()).collect()
    }

    fn describe(&self) -> Vec<(String, String)> {
        catalog::describe(&self.bundle)
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect()
    }

    fn export(&self) -> PyResult<String> {
        catalog::serialize_spec(&self.bundle).map_err(err)
    }

    fn element(&self, text: &str) -> PyResult<Element> {
        let value = parse_element(self.spec(), text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(self.wrap(value))
    }

    fn unit(&self) -> Element {
        self.wrap(self.spec().unit())
    }

    fn product(&self, x: ElementArg, y: ElementArg) -> PyResult<Element> {
        let p = self.spec().product(&self.arg(&x)?, &self.arg(&y)?).map_err(err)?;
        Ok(self.wrap(p))
    }

    /// `("inverse", element)`, `("not-invertible", witness text)` or
    /// `("undetermined", achieved cutoff)`.
    fn invert(&self, py: Python<'_>, x: ElementArg, cutoff: Energy) -> PyResult<(String, Py<PyAny>)> {
        let x = self.arg(&x)?;
        let outcome = calc::invert(self.spec(), &x, &cutoff.rational()?).map_err(err)?;
        Ok(match outcome {
            InvertOutcome::Inverse(y) => ("inverse".into(), Py::new(py, self.wrap(y))?.into_any()),
            InvertOutcome::NotInvertible(w) => (
                "not-invertible".into(),
                describe_witness(self.spec(), &w).into_pyobject(py)?.into_any().unbind(),
            ),
            InvertOutcome::Undetermined { achieved, .. } => (
                "undetermined".into(),
                achieved.to_string().into_pyobject(py)?.into_any().unbind(),
            ),
        })
    }

    fn tau(&self, gamma: &str) -> PyResult<Element> {
        let g = parse_gamma(self.spec().gamma(), gamma).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(self.wrap(calc::tau(self.spec(), &g)))
    }

    /// Seidel element and Maslov index of the m-th power of a loop.
    fn power(&self, loop_name: &str, m: u32, cutoff: Energy) -> PyResult<(Element, i64)> {
        if m == 0 {
            return Err(PyValueError::new_err("m must be at least 1"));
        }
        let l = self.find_loop(loop_name)?;
        let p = calc::loop_power(l, m, &cutoff.rational()?).map_err(err)?;
        Ok((self.wrap(p.q().clone()), p.maslov()))
    }

    /// `(k, gamma)` for the first power in the image of tau, or
    /// `(max, None)` when no power up to `max` is.
    fn order_bound(&self, loop_name: &str, max: u32, cutoff: Energy) -> PyResult<(u32, Option<String>)> {
        let l = self.find_loop(loop_name)?;
        match calc::order_lower_bound(l, max, &cutoff.rational()?).map_err(err)? {
            OrderBound::FirstTauPower(k, g) => Ok((k, Some(g.to_string()))),
            OrderBound::NoneUpTo(k) => Ok((k, None)),
        }
    }

    fn __repr__(&self) -> String {
        format!("Ring({:?})", self.spec().name())
    }
}

/// An element of quantum homology, possibly truncated at an energy.
#[pyclass(frozen)]
struct Element {
    spec: Arc<RingSpec>,
    value: QhElement,
}

impl Element {
    fn other(&self, o: &ElementArg) -> PyResult<QhElement> {
        match o {
            ElementArg::Element(e) if e.spec == self.spec => Ok(e.value.clone()),
            ElementArg::Element(_) => Err(PyValueError::new_err("element belongs to a different ring")),
            ElementArg::Text(s) => parse_element(&self.spec, s).map_err(|e| PyValueError::new_err(e.to_string())),
        }
    }

    fn with(&self, value: QhElement) -> Element {
        Element {
            spec: self.spec.clone(),
            value,
        }
    }
}

#[pymethods]
impl Element {
    fn __str__(&self) -> String {
        self.spec.render(&self.value)
    }

    fn __repr__(&self) -> String {
        format!("Element({:?})", self.spec.render(&self.value))
    }

    fn __eq__(&self, o: ElementArg) -> PyResult<bool> {
        Ok(self.value == self.other(&o)?)
    }

    fn __add__(&self, o: ElementArg) -> PyResult<Element> {
        Ok(self.with(self.value.add(&self.other(&o)?).map_err(err)?))
    }

    fn __mul__(&self, o: ElementArg) -> PyResult<Element> {
        Ok(self.with(self.spec.product(&self.value, &self.other(&o)?).map_err(err)?))
    }

    /// Homological degree, or None when the element is zero or mixed.
    #[getter]
    fn degree(&self) -> Option<i64> {
        match self.spec.degree(&self.value) {
            QhDegree::Homogeneous(d) => Some(d),
            QhDegree::Any | QhDegree::NotHomogeneous => None,
        }
    }

    /// The validity cutoff as a string, or None when exact.
    #[getter]
    fn cutoff(&self) -> Option<String> {
        self.value.cutoff().finite().map(format_rational)
    }

    fn __len__(&self) -> usize {
        self.value.len()
    }
}

/// Runs a verification suite (or "all"); returns (suite, check, passed, detail).
#[pyfunction]
#[pyo3(signature = (suite, seed = verify::DEFAULT_SEED))]
fn run_verify(suite: &str, seed: u64) -> PyResult<Vec<(String, String, bool, String)>> {
    let reports = verify::run_suite(suite, seed).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(reports
        .into_iter()
        .flat_map(|r| {
            let name = r.suite.to_string();
            r.checks
                .into_iter()
                .map(move |c| (name.clone(), c.label, c.passed, c.detail))
        })
        .collect())
}

#[pyfunction]
fn builtins() -> Vec<&'static str> {
    catalog::BUILTIN_NAMES.to_vec()
}

#[pyfunction]
fn suites() -> Vec<&'static str> {
    verify::SUITES.to_vec()
}

#[pymodule]
fn seidel(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Ring>()?;
    m.add_class::<Element>()?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    m.add_function(wrap_pyfunction!(builtins, m)?)?;
    m.add_function(wrap_pyfunction!(suites, m)?)?;
    m.add("SeidelError", m.py().get_type::<SeidelError>())?;
    Ok(())
}
