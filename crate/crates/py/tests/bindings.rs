use pyo3::prelude::*;
use pyo3::types::PyDict;

fn run(code: &str) {
    Python::initialize();
    Python::attach(|py| {
        let m = pyo3::wrap_pymodule!(berge::berge)(py);
        let globals = PyDict::new(py);
        globals.set_item("berge", m).unwrap();
        let code = std::ffi::CString::new(code).unwrap();
        py.run(&code, Some(&globals), None).unwrap_or_else(|e| panic!("{e}"));
    });
}

#[test]
fn search_and_verify() {
    run(r#"
h = berge.Hypergraph.random(7, 3, 2, 5)
c = berge.search(h, t=3)
assert c is not None and c.t == 3
assert berge.verify(c, h) is None
assert berge.verify(c, h, 2) is None
"#);
}

#[test]
fn errors_become_exceptions() {
    run(r#"
try:
    berge.extract(berge.Hypergraph.random(9, 4, 3, 0))
    raise AssertionError("small n accepted")
except ValueError as e:
    assert "85" in str(e), str(e)
try:
    berge.stress(4, 2, 2, 8, generator="nope")
    raise AssertionError("bad generator accepted")
except ValueError:
    pass
s = berge.shadow(berge.Hypergraph.monochromatic(5, 3, 1, 1))
assert not s.is_good([0, 1], 0)
"#);
}
