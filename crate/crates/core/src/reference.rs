//! Published eigenvalue tables (γ = 3) and characteristic polynomials.

use crate::linalg::Polynomial;

/// Couplings of every table row.
pub const TABLE_LAMBDAS: [f64; 6] = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5];

/// Coupling used by every table.
pub const TABLE_GAMMA: f64 = 3.0;

/// Tables are printed to three decimals.
pub const TABLE_TOL: f64 = 1.5e-3;

/// One published table: the sorted eigenvalues of the block `nu` of an `f`-site chain,
/// one row per entry of [`TABLE_LAMBDAS`].
#[derive(Debug, Clone, Copy)]
pub struct Table {
    pub name: &'static str,
    pub f: usize,
    pub nu: i32,
    pub rows: &'static [&'static [f64]],
}

#[allow(clippy::approx_constant)]
pub const TABLES: [Table; 8] = [
    Table {
        name: "f1",
        f: 1,
        nu: 0,
        rows: &[
            &[-7.000, -2.000, 0.000],
            &[-7.004, -2.016, 0.020],
            &[-7.016, -2.061, 0.077],
            &[-7.036, -2.132, 0.168],
            &[-7.064, -2.221, 0.286],
            &[-7.101, -2.323, 0.424],
        ],
    },
    Table {
        name: "f3 nu=0",
        f: 3,
        nu: 0,
        rows: &[
            &[-5.372, -2.000, 0.000, 0.372],
            &[-5.389, -2.043, 0.058, 0.374],
            &[-5.439, -2.159, 0.212, 0.386],
            &[-5.524, -2.314, 0.336, 0.503],
            &[-5.645, -2.484, 0.353, 0.776],
            &[-5.801, -2.649, 0.357, 1.094],
        ],
    },
    Table {
        name: "f3 nu=+-1",
        f: 3,
        nu: 1,
        rows: &[
            &[-3.450, 1.000, 1.450],
            &[-3.456, 1.000, 1.456],
            &[-3.474, 1.000, 1.474],
            &[-3.504, 1.000, 1.504],
            &[-3.546, 1.000, 1.546],
            &[-3.598, 1.000, 1.598],
        ],
    },
    Table {
        name: "f2 nu=0",
        f: 2,
        nu: 0,
        rows: &[
            &[-5.772, -2.000, 0.000, 2.772],
            &[-5.782, -2.029, 0.039, 2.772],
            &[-5.813, -2.110, 0.150, 2.773],
            &[-5.865, -2.227, 0.318, 2.775],
            &[-5.939, -2.364, 0.525, 2.777],
            &[-6.034, -2.507, 0.761, 2.780],
        ],
    },
    Table {
        name: "f2 nu=1",
        f: 2,
        nu: 1,
        rows: &[
            &[-3.000, 2.000],
            &[-3.004, 2.004],
            &[-3.016, 2.016],
            &[-3.036, 2.036],
            &[-3.063, 2.063],
            &[-3.098, 2.098],
        ],
    },
    Table {
        name: "f4 nu=0",
        f: 4,
        nu: 0,
        rows: &[
            &[-5.191, -2.000, -1.317, 0.000, 3.509],
            &[-5.214, -2.066, -1.307, 0.078, 3.509],
            &[-5.282, -2.228, -1.288, 0.289, 3.509],
            &[-5.398, -2.429, -1.273, 0.590, 3.510],
            &[-5.563, -2.631, -1.263, 0.947, 3.510],
            &[-5.778, -2.814, -1.257, 1.338, 3.511],
        ],
    },
    Table {
        name: "f4 nu=2",
        f: 4,
        nu: 2,
        rows: &[
            &[-3.000, 0.000, 0.000, 2.000],
            &[-3.004, -0.010, 0.000, 2.014],
            &[-3.016, -0.039, 0.000, 2.055],
            &[-3.036, -0.084, 0.000, 2.120],
            &[-3.065, -0.142, 0.000, 2.206],
            &[-3.101, -0.209, 0.000, 2.311],
        ],
    },
    Table {
        name: "f4 nu=+-1",
        f: 4,
        nu: 1,
        rows: &[
            &[-4.000, 0.000, 1.000],
            &[-4.009, 0.005, 1.004],
            &[-4.036, 0.020, 1.016],
            &[-4.080, 0.043, 1.037],
            &[-4.140, 0.072, 1.067],
            &[-4.215, 0.107, 1.107],
        ],
    },
];

/// A published characteristic polynomial of the block `nu` of an `f`-site chain.
#[derive(Debug, Clone, Copy)]
pub struct CharPoly {
    pub name: &'static str,
    pub f: usize,
    pub nu: i32,
    pub coefficients: fn(f64, f64) -> Polynomial,
}

pub const CHAR_POLYS: [CharPoly; 8] = [
    CharPoly {
        name: "f1 cubic",
        f: 1,
        nu: 0,
        coefficients: |g, l| {
            let l2 = l * l;
            Polynomial::from_descending(vec![
                1.0,
                g + 6.0,
                2.0 * g + 8.0 - 6.0 * l2,
                -16.0 * l2 - 4.0 * g * l2,
            ])
        },
    },
    CharPoly {
        name: "f2 quartic",
        f: 2,
        nu: 0,
        coefficients: |g, l| {
            let l2 = l * l;
            Polynomial::from_descending(vec![
                1.0,
                g + 2.0,
                2.0 * g - 16.0 - 12.0 * l2,
                16.0 * l2 - 10.0 * g * l2 - 32.0,
                128.0 * l2,
            ])
        },
    },
    CharPoly {
        name: "f2 quadratic",
        f: 2,
        nu: 1,
        coefficients: |g, l| Polynomial::from_descending(vec![1.0, g - 2.0, -2.0 * g - 2.0 * l * l]),
    },
    CharPoly {
        name: "f3 quartic",
        f: 3,
        nu: 0,
        coefficients: |g, l| {
            let l2 = l * l;
            Polynomial::from_descending(vec![
                1.0,
                g + 4.0,
                4.0 * g - 4.0 - 18.0 * l2,
                4.0 * g - 16.0 - 12.0 * l2 - 16.0 * g * l2,
                96.0 * l2 - 24.0 * g * l2,
            ])
        },
    },
    CharPoly {
        name: "f3 cubic",
        f: 3,
        nu: 1,
        coefficients: |g, l| {
            let l2 = l * l;
            Polynomial::from_descending(vec![
                1.0,
                g - 2.0,
                -(3.0 * l2 + 2.0 * g + 1.0),
                2.0 + g + 6.0 * l2 - g * l2,
            ])
        },
    },
    CharPoly {
        name: "f4 quintic",
        f: 4,
        nu: 0,
        coefficients: |g, l| {
            let l2 = l * l;
            Polynomial::from_descending(vec![
                1.0,
                g + 2.0,
                2.0 * g - 16.0 - 24.0 * l2,
                -8.0 * g - 32.0 + 32.0 * l2 - 22.0 * g * l2,
                -16.0 * g + 256.0 * l2 + 16.0 * g * l2,
                128.0 * g * l2,
            ])
        },
    },
    CharPoly {
        name: "f4 quartic with zero root",
        f: 4,
        nu: 2,
        coefficients: |g, l| {
            let l2 = l * l;
            Polynomial::from_descending(vec![
                1.0,
                g - 2.0,
                -(4.0 * l2 + 2.0 * g),
                -2.0 * g * l2,
                0.0,
            ])
        },
    },
    CharPoly {
        name: "f4 cubic",
        f: 4,
        nu: 1,
        coefficients: |g, l| {
            let l2 = l * l;
            Polynomial::from_descending(vec![
                1.0,
                g,
                -4.0 * (l2 + 1.0),
                8.0 * l2 - 2.0 * g * l2,
            ])
        },
    },
];

/// Sample points for polynomial comparison.
pub const CHARPOLY_GAMMAS: [f64; 3] = [1.0, 3.0, 7.0];
pub const CHARPOLY_LAMBDAS: [f64; 3] = [0.0, 0.3, 1.0];
pub const CHARPOLY_TOL: f64 = 1e-8;

/// Largest coefficient mismatch, each relative to `max(1, |published|)`.
///
/// Returns infinity when the degrees differ.
pub fn coefficient_mismatch(published: &Polynomial, computed: &Polynomial) -> f64 {
    if published.degree() != computed.degree() {
        return f64::INFINITY;
    }
    published
        .ascending()
        .iter()
        .zip(computed.ascending())
        .map(|(p, c)| (p - c).abs() / p.abs().max(1.0))
        .fold(0.0, f64::max)
}
