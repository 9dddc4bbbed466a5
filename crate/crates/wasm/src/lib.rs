//! Three operations for the browser demo in `www/`. Results cross the JS
//! boundary as flat `Float64Array`s.

use covent::entangle::{bell_mixture_scan, bell_rotation_scan, OperatorFamily};
use covent::majorana::{dispersion, polynomial_to_state, roots, MajoranaPolynomial, Spin};
use covent::states::BellKind;
use covent::C64;

fn family(name: &str) -> Result<OperatorFamily, String> {
    OperatorFamily::parse(name).ok_or_else(|| format!("unknown operators '{name}'"))
}

fn bell(name: &str) -> Result<BellKind, String> {
    BellKind::parse(name).ok_or_else(|| format!("unknown Bell state '{name}'"))
}

/// Rows `x, cov, altcov` of the mixture `x P_b1 + (1 - x) P_b2`, flattened.
pub fn bell_mixture(b1: &str, b2: &str, points: usize, operators: &str) -> Result<Vec<f64>, String> {
    let t = bell_mixture_scan(bell(b1)?, bell(b2)?, points, family(operators)?).map_err(|e| e.to_string())?;
    Ok(t.rows.concat())
}

/// Rows `theta_x, theta_y, cov, altcov` over `[0, pi]^2`, `theta_y` fastest.
pub fn bell_rotation(points: usize, operators: &str) -> Result<Vec<f64>, String> {
    if points > 401 {
        return Err("at most 401 points per axis".into());
    }
    let t = bell_rotation_scan(points, family(operators)?).map_err(|e| e.to_string())?;
    Ok(t.rows.concat())
}

/// Majorana points of `sum_k a_k z^k` with `a_k = re[k] + i im[k]`.
/// Returns `[dispersion, x0, y0, z0, x1, ...]`; the spin is `(len - 1) / 2`.
pub fn constellation(re: &[f64], im: &[f64]) -> Result<Vec<f64>, String> {
    if re.len() != im.len() || re.len() < 2 || re.len() > 17 {
        return Err("need between 2 and 17 coefficients, with as many imaginary parts".into());
    }
    let spin = Spin::from_twice(re.len() as u32 - 1);
    let coeffs = re.iter().zip(im).map(|(r, i)| C64::new(*r, *i)).collect();
    let p = MajoranaPolynomial::new(spin, coeffs).map_err(|e| e.to_string())?;
    let con = roots(&p).map_err(|e| e.to_string())?;
    let d = dispersion(&polynomial_to_state(&p).map_err(|e| e.to_string())?);
    let mut out = vec![d];
    out.extend(con.points.iter().flatten());
    Ok(out)
}

#[cfg(target_arch = "wasm32")]
mod wasm {
    use wasm_bindgen::prelude::*;

    #[wasm_bindgen]
    pub fn bell_mixture(b1: &str, b2: &str, points: usize, operators: &str) -> Result<Vec<f64>, JsValue> {
        super::bell_mixture(b1, b2, points, operators).map_err(|e| JsValue::from_str(&e))
    }

    #[wasm_bindgen]
    pub fn bell_rotation(points: usize, operators: &str) -> Result<Vec<f64>, JsValue> {
        super::bell_rotation(points, operators).map_err(|e| JsValue::from_str(&e))
    }

    #[wasm_bindgen]
    pub fn constellation(re: &[f64], im: &[f64]) -> Result<Vec<f64>, JsValue> {
        super::constellation(re, im).map_err(|e| JsValue::from_str(&e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixture_is_flat_rows_of_three() {
        let v = bell_mixture("phi+", "psi+", 11, "equal-weight").unwrap();
        assert_eq!(v.len(), 33);
        assert!(v[30..].iter().all(|x| (x - 1.0).abs() < 1e-12), "{:?}", &v[30..]);
        assert!(bell_mixture("phi+", "nope", 11, "pair").is_err());
    }

    #[test]
    fn rotation_grid_starts_at_the_bell_value() {
        let v = bell_rotation(5, "sigma3").unwrap();
        assert_eq!(v.len(), 100);
        assert!((v[2] - 1.0).abs() < 1e-12 && (v[3] - 1.0).abs() < 1e-12);
        assert!(bell_rotation(1000, "sigma3").is_err());
    }

    #[test]
    fn triangle_constellation() {
        let v = constellation(&[1.0, 0.0, 0.0, 1.0], &[0.0; 4]).unwrap();
        assert_eq!(v.len(), 10);
        assert!((v[0] - 3.75).abs() < 1e-10);
        for p in v[1..].chunks(3) {
            assert!(p[2].abs() < 1e-9);
        }
        assert!(constellation(&[1.0], &[0.0]).is_err());
        assert!(constellation(&[0.0, 0.0], &[0.0, 0.0]).is_err());
    }
}
