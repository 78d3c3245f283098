//! OFF mesh export for 2-dimensional book complexes.

use std::f64::consts::PI;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;

/// Writes `M_{2,n}` as a triangle mesh: the spine runs from `(0,0,0)` to
/// `(0,0,1)` and page `i` has its free vertex at `(cos 2πi/n, sin 2πi/n, 1/2)`.
/// Vertices follow the lattice element order.
pub fn book_to_off(lattice: &FiniteLattice) -> Result<String> {
    let (d, n) = lattice.book_shape().ok_or(Error::NotABook)?;
    if d != 2 {
        return Err(Error::UnsupportedDimension(d));
    }
    let atoms = lattice.atoms();
    let mut out = String::new();
    writeln!(out, "OFF").unwrap();
    writeln!(out, "{} {} {}", lattice.len(), n, 2 * n + 1).unwrap();
    for x in lattice.elements() {
        let (px, py, pz) = if x == lattice.bottom() {
            (0.0, 0.0, 0.0)
        } else if x == lattice.top() {
            (0.0, 0.0, 1.0)
        } else {
            let i = atoms.iter().position(|&a| a == x).expect("middle elements are atoms") + 1;
            let angle = 2.0 * PI * i as f64 / n as f64;
            (angle.cos(), angle.sin(), 0.5)
        };
        writeln!(out, "{} {} {}", coord(px), coord(py), coord(pz)).unwrap();
    }
    for a in &atoms {
        writeln!(
            out,
            "3 {} {} {}",
            lattice.bottom().index(),
            a.index(),
            lattice.top().index()
        )
        .unwrap();
    }
    Ok(out)
}

fn coord(v: f64) -> String {
    // avoid "-0.000000"
    let v = if v.abs() < 5e-7 { 0.0 } else { v };
    format!("{v:.6}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_pages() {
        let off = book_to_off(&FiniteLattice::book(2, 3).unwrap()).unwrap();
        let lines: Vec<&str> = off.lines().collect();
        assert_eq!(lines[0], "OFF");
        assert_eq!(lines[1], "5 3 7");
        assert_eq!(lines[2], "0.000000 0.000000 0.000000");
        assert_eq!(lines[3], "-0.500000 0.866025 0.500000");
        assert_eq!(lines[5], "1.000000 0.000000 0.500000");
        assert_eq!(lines[6], "0.000000 0.000000 1.000000");
        assert_eq!(&lines[7..], ["3 0 1 4", "3 0 2 4", "3 0 3 4"]);
    }

    #[test]
    fn single_page() {
        let off = book_to_off(&FiniteLattice::book(2, 1).unwrap()).unwrap();
        assert!(off.starts_with("OFF\n3 1 3\n"));
        assert_eq!(off.lines().count(), 2 + 3 + 1);
    }

    #[test]
    fn rejects_other_shapes() {
        let err = book_to_off(&FiniteLattice::book(3, 2).unwrap()).unwrap_err();
        assert_eq!(err, Error::UnsupportedDimension(3));
        let n5 = crate::lattice::SublatticeKind::N5.template();
        assert_eq!(book_to_off(&n5).unwrap_err(), Error::NotABook);
    }
}
