//! Python bindings. The module is importable as `flagdeform`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use flagdeform::deform::{Convention, Deformation, ProductKind};
use flagdeform::notation::{format_element, parse_element, Notation};
use flagdeform::tableio::table_records;
use flagdeform::verify::{run_suite, Suite};
use flagdeform::{CartanType, Error, RootSystem, SimpleSet};

type Row = (String, String, String, u64, u64, u64);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Consistency(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse<T: std::str::FromStr<Err = Error>>(s: &str) -> PyResult<T> {
    s.parse().map_err(py_err)
}

/// A flag variety G/P with its cup table and deformation data.
#[pyclass(name = "FlagVariety", module = "flagdeform", frozen)]
struct PyFlagVariety {
    inner: Deformation,
}

impl PyFlagVariety {
    fn index(&self, s: &str) -> PyResult<usize> {
        let q = self.inner.quotient();
        let w = parse_element(q.root_system(), s).map_err(py_err)?;
        q.require_index(&w).map_err(py_err)
    }

    fn name(&self, k: usize, notation: Notation) -> PyResult<String> {
        let q = self.inner.quotient();
        format_element(q.root_system(), q.element(k), notation).map_err(py_err)
    }

    fn kind(&self, product: &str, mixed_set: Option<&str>) -> PyResult<ProductKind> {
        let rank = self.inner.variety().cartan_type().rank();
        Ok(match (product, mixed_set) {
            ("cup", None) => ProductKind::Cup,
            ("bk", None) => ProductKind::Bk,
            ("star0", None) => ProductKind::Star0,
            ("mixed", Some(s)) => {
                ProductKind::Mixed(SimpleSet::parse_one_based(s, rank).map_err(py_err)?)
            }
            _ => {
                return Err(PyValueError::new_err(
                    "product must be cup, bk, star0, or mixed with mixed_set",
                ))
            }
        })
    }
}

#[pymethods]
impl PyFlagVariety {
    /// `FlagVariety("B4", "2,4")`: Cartan type and 1-based associated roots.
    #[new]
    fn new(py: Python<'_>, cartan_type: &str, assoc: &str) -> PyResult<Self> {
        let fv = flagdeform::FlagVariety::parse(cartan_type, assoc).map_err(py_err)?;
        let inner = py.detach(|| Deformation::new(fv)).map_err(py_err)?;
        Ok(PyFlagVariety { inner })
    }

    #[getter]
    fn cartan_type(&self) -> String {
        self.inner.variety().cartan_type().to_string()
    }

    #[getter]
    fn assoc(&self) -> Vec<usize> {
        self.inner.quotient().assoc().one_based()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.quotient().dim()
    }

    fn __len__(&self) -> usize {
        self.inner.quotient().len()
    }

    fn __repr__(&self) -> String {
        format!(
            "FlagVariety({:?}, assoc={:?}, |W^P|={})",
            self.cartan_type(),
            self.assoc(),
            self.__len__()
        )
    }

    /// Minimal coset representatives in graded order.
    #[pyo3(signature = (notation = "word"))]
    fn elements(&self, notation: &str) -> PyResult<Vec<String>> {
        let n: Notation = parse(notation)?;
        (0..self.__len__()).map(|k| self.name(k, n)).collect()
    }

    fn length(&self, w: &str) -> PyResult<usize> {
        Ok(self.inner.quotient().length(self.index(w)?))
    }

    /// Expansion of `sigma_u * sigma_v` as `[(w, coefficient)]`.
    #[pyo3(signature = (u, v, product = "cup", mixed_set = None, notation = "word"))]
    fn product(
        &self,
        u: &str,
        v: &str,
        product: &str,
        mixed_set: Option<&str>,
        notation: &str,
    ) -> PyResult<Vec<(String, u64)>> {
        let n: Notation = parse(notation)?;
        let kind = self.kind(product, mixed_set)?;
        let terms = self
            .inner
            .product(kind, self.index(u)?, self.index(v)?)
            .map_err(py_err)?;
        terms
            .into_iter()
            .map(|(w, c)| Ok((self.name(w, n)?, c)))
            .collect()
    }

    /// `{"c", "bk", "star0", "ledger"}` for one triple.
    fn coefficient<'py>(
        &self,
        py: Python<'py>,
        u: &str,
        v: &str,
        w: &str,
    ) -> PyResult<Bound<'py, PyDict>> {
        let d = self
            .inner
            .coefficient(self.index(u)?, self.index(v)?, self.index(w)?)
            .map_err(py_err)?;
        let out = PyDict::new(py);
        out.set_item("c", d.c)?;
        out.set_item("bk", d.bk())?;
        out.set_item("star0", d.star0())?;
        let ledger = PyDict::new(py);
        for l in &d.ledger {
            let entry = PyDict::new(py);
            entry.set_item("diff", l.diff.clone())?;
            entry.set_item("s1_degree", l.s1_degree)?;
            entry.set_item("s0_degree", l.s0_degree)?;
            ledger.set_item(l.alpha, entry)?;
        }
        out.set_item("ledger", ledger)?;
        Ok(out)
    }

    /// Exponent profile of `w`: associated root (1-based) to sorted multiset.
    fn profile(&self, w: &str) -> PyResult<Vec<(usize, Vec<u32>)>> {
        let p = self.inner.profile(self.index(w)?);
        p.assoc()
            .iter()
            .map(|a| Ok((a + 1, p.multiset(a).map_err(py_err)?)))
            .collect()
    }

    /// Nonzero counts of the cup, star0 and bk products.
    #[pyo3(signature = (convention = "ordered"))]
    fn classify<'py>(&self, py: Python<'py>, convention: &str) -> PyResult<Bound<'py, PyDict>> {
        let conv: Convention = parse(convention)?;
        let c = self.inner.classify().counts(conv);
        let out = PyDict::new(py);
        out.set_item("type", self.cartan_type())?;
        out.set_item("assoc", self.assoc())?;
        out.set_item("convention", conv.to_string())?;
        out.set_item("nonzero_cup", c.nonzero_cup)?;
        out.set_item("nonzero_star0", c.nonzero_star0)?;
        out.set_item("levi_movable", c.levi_movable)?;
        Ok(out)
    }

    /// Every nonzero constant as `(u, v, w, c, bk, star0)`.
    #[pyo3(signature = (notation = "word", convention = "ordered"))]
    fn table(&self, notation: &str, convention: &str) -> PyResult<Vec<Row>> {
        let recs =
            table_records(&self.inner, parse(notation)?, parse(convention)?).map_err(py_err)?;
        Ok(recs
            .into_iter()
            .map(|r| (r.u, r.v, r.w, r.c, r.bk, r.star0))
            .collect())
    }

    /// Run a property suite; returns `(passed, report)`.
    fn verify(&self, py: Python<'_>, suite: &str) -> PyResult<(bool, String)> {
        let s: Suite = parse(suite)?;
        let r = py.detach(|| run_suite(&self.inner, s)).map_err(py_err)?;
        Ok((r.passed(), r.to_string()))
    }
}

/// Cartan matrix of a type such as "B4".
#[pyfunction]
fn cartan_matrix(cartan_type: &str) -> PyResult<Vec<Vec<i32>>> {
    let ct: CartanType = parse(cartan_type)?;
    Ok(RootSystem::build(ct).cartan_matrix().to_vec())
}

/// Positive roots in simple-root coordinates, ordered by height.
#[pyfunction]
fn positive_roots(cartan_type: &str) -> PyResult<Vec<Vec<i32>>> {
    let ct: CartanType = parse(cartan_type)?;
    Ok(RootSystem::build(ct)
        .positive_roots()
        .iter()
        .map(|r| r.coords().to_vec())
        .collect())
}

#[pymodule]
#[pyo3(name = "flagdeform")]
fn flagdeform_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFlagVariety>()?;
    m.add_function(wrap_pyfunction!(cartan_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(positive_roots, m)?)?;
    m.add("__version__", flagdeform::tableio::ENGINE_VERSION)?;
    Ok(())
}
