//! Random interval unions and arcs with rational endpoints.

use rand::Rng;

use super::torus::TorusSet;
use crate::rational::Rational;

/// Up to `max_pieces` random intervals with endpoints of denominator `den`.
pub fn random_interval_union<R: Rng + ?Sized>(rng: &mut R, max_pieces: usize, den: i128) -> TorusSet {
    loop {
        let pieces = rng.gen_range(1..=max_pieces);
        let mut parts = Vec::new();
        for _ in 0..pieces {
            let a = rng.gen_range(0..den);
            let b = rng.gen_range(a + 1..=den);
            parts.push((Rational::new(a, den), Rational::new(b, den)));
        }
        let s = TorusSet::from_intervals(parts).expect("valid endpoints");
        if !s.is_empty() {
            return s;
        }
    }
}

/// A random nonempty union of the cells `[k/q, (k+1)/q)`.
pub fn random_cell_union<R: Rng + ?Sized>(rng: &mut R, q: i128, p_cell: f64) -> TorusSet {
    let mut parts: Vec<_> =
        (0..q).filter(|_| rng.gen_bool(p_cell)).map(|k| (Rational::new(k, q), Rational::new(k + 1, q))).collect();
    if parts.is_empty() {
        let k = rng.gen_range(0..q);
        parts.push((Rational::new(k, q), Rational::new(k + 1, q)));
    }
    TorusSet::from_intervals(parts).expect("valid cells")
}

/// An arc of length `len_num/den` starting at a random multiple of `1/den`.
pub fn random_arc<R: Rng + ?Sized>(rng: &mut R, den: i128, len_num: i128) -> TorusSet {
    TorusSet::arc(Rational::new(rng.gen_range(0..den), den), Rational::new(len_num, den))
}
