use pyo3::prelude::*;

#[pymodule]
fn funcint_py(_m: &Bound<'_, PyModule>) -> PyResult<()> {
    Ok(())
}
