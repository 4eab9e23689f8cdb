//! Binary PPM (P6) heatmap of a [`PhaseGrid`].
//!
//! One pixel per cell, ω along x and γ₀ along y with the largest γ₀ in the
//! top row. Colour runs from blue (c = 0) to red (c = 1); `Exceptional`
//! cells are white.

use pt_floquet::{PhaseClass, PhaseGrid};

pub fn pixel(c: f64, class: PhaseClass) -> [u8; 3] {
    if class == PhaseClass::Exceptional {
        return [255, 255, 255];
    }
    let c = if c.is_nan() { 0.0 } else { c.clamp(0.0, 1.0) };
    [(255.0 * c).round() as u8, 0, (255.0 * (1.0 - c)).round() as u8]
}

pub fn header(width: usize, height: usize) -> String {
    format!("P6\n{width} {height}\n255\n")
}

pub fn encode(grid: &PhaseGrid) -> Vec<u8> {
    let (w, h) = (grid.cols(), grid.rows());
    let head = header(w, h);
    let mut out = Vec::with_capacity(head.len() + 3 * w * h);
    out.extend_from_slice(head.as_bytes());
    for row in (0..h).rev() {
        for col in 0..w {
            out.extend_from_slice(&pixel(grid.c(row, col), grid.class(row, col)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use pt_floquet::sweep::sweep_grid;
    use pt_floquet::{AxisRange, DEFAULT_TOL};

    #[test]
    fn pixel_mapping() {
        assert_eq!(pixel(0.0, PhaseClass::Unbroken), [0, 0, 255]);
        assert_eq!(pixel(1.0, PhaseClass::Broken), [255, 0, 0]);
        assert_eq!(pixel(0.5, PhaseClass::Broken), [128, 0, 128]);
        assert_eq!(pixel(0.3, PhaseClass::Exceptional), [255, 255, 255]);
        assert_eq!(pixel(f64::NAN, PhaseClass::Broken), [0, 0, 255]);
    }

    #[test]
    fn layout() {
        let grid = sweep_grid(
            1.0,
            1.0,
            AxisRange::new(0.0, 2.0, 3).unwrap(),
            AxisRange::new(0.5, 3.0, 4).unwrap(),
            DEFAULT_TOL,
        )
        .unwrap();
        let bytes = encode(&grid);
        let head = b"P6\n4 3\n255\n";
        assert_eq!(&bytes[..head.len()], head);
        assert_eq!(bytes.len(), head.len() + 3 * 12);
        // top row is gamma0 = 2 (broken), bottom row gamma0 = 0 (unbroken)
        let px = |r: usize, c: usize| &bytes[head.len() + 3 * (4 * r + c)..][..3];
        assert_eq!(px(2, 0), &[0, 0, 255]);
        assert!(px(0, 0)[0] > 200);
    }

    #[test]
    fn default_grid_header_fits_fifteen_bytes() {
        assert_eq!(header(400, 400).len(), 15);
    }
}
