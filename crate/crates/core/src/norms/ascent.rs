//! Lower bounds on sup-norms by alternating maximization.
//!
//! With every slot but one fixed, `U` is a linear functional `sum_j c_j x_j`
//! of the free slot, and its maximum over the `l_p` ball is attained in closed
//! form at the phase-aligned dual vector, with value `||c||_{p*}`. Sweeping
//! the slots never decreases `|U|`; a run stops once a sweep gains less than
//! `rel_tol` relatively or after `max_sweeps` sweeps.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{conjugate_exponent, lr_norm, BallSpec, NormResult};
use crate::sum::pairwise_sum;
use crate::tensor::{slot_coefficients_raw, CoefficientTensor, Scalar, ScalarField, VectorTuple};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AscentOptions {
    pub restarts: usize,
    pub seed: u64,
    pub max_sweeps: usize,
    pub rel_tol: f64,
}

impl AscentOptions {
    pub fn new(restarts: usize, seed: u64) -> Self {
        AscentOptions {
            restarts,
            seed,
            max_sweeps: 500,
            rel_tol: 1e-12,
        }
    }
}

impl Default for AscentOptions {
    fn default() -> Self {
        AscentOptions::new(20, 0)
    }
}

pub fn sup_norm_ascent(
    t: &CoefficientTensor,
    ball: BallSpec,
    restarts: usize,
    seed: u64,
) -> NormResult {
    sup_norm_ascent_with(t, ball, &AscentOptions::new(restarts, seed))
}

/// Best of `opts.restarts` climbs from seeded random points of the unit ball.
///
/// Restart `r` draws its start from `ChaCha8(seed + r)`. Ties in value are
/// broken by the lexicographically smallest certificate.
pub fn sup_norm_ascent_with(
    t: &CoefficientTensor,
    ball: BallSpec,
    opts: &AscentOptions,
) -> NormResult {
    let restarts = opts.restarts.max(1);
    let climbs: Vec<Climb> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(r as u64));
            let start = random_start(&mut rng, t.order(), t.dim(), t.field(), ball);
            climb(t, ball, start, opts)
        })
        .collect();

    let best = climbs
        .into_iter()
        .reduce(|a, b| match a.value.partial_cmp(&b.value) {
            Some(Ordering::Less) => b,
            Some(Ordering::Equal) if lex_cmp(&b.vectors, &a.vectors) == Ordering::Less => b,
            _ => a,
        })
        .expect("at least one restart");

    let certificate =
        VectorTuple::new(t.field(), best.vectors).expect("ascent iterates stay finite");
    let value = t.eval(&certificate).expect("compatible certificate").norm();
    NormResult {
        value,
        certificate,
        exact: false,
    }
}

fn lex_cmp(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Ordering {
    for (u, v) in a.iter().flatten().zip(b.iter().flatten()) {
        let o =
            u.re.partial_cmp(&v.re)
                .unwrap_or(Ordering::Equal)
                .then(u.im.partial_cmp(&v.im).unwrap_or(Ordering::Equal));
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

pub(crate) struct Climb {
    pub value: f64,
    pub vectors: Vec<Vec<Scalar>>,
    /// Objective `|U(x)|` at the start and after every sweep.
    #[cfg_attr(not(test), allow(dead_code))]
    pub trace: Vec<f64>,
}

pub(crate) fn climb(
    t: &CoefficientTensor,
    ball: BallSpec,
    start: Vec<Vec<Scalar>>,
    opts: &AscentOptions,
) -> Climb {
    let (m, n) = (t.order(), t.dim());
    let mut x = start;
    let mut current = t
        .eval(&VectorTuple::new(t.field(), x.clone()).expect("finite start"))
        .expect("compatible start")
        .norm();
    let mut trace = vec![current];
    let dual = conjugate_exponent(ball.p()).expect("ball exponent >= 1");

    for _ in 0..opts.max_sweeps {
        let mut value = current;
        for slot in 0..m {
            let c = slot_coefficients_raw(t.entries(), m, n, &x, slot);
            if let Some((v, val)) = best_response(&c, ball.p(), dual) {
                x[slot] = v;
                value = val;
            } else {
                value = 0.0;
            }
        }
        trace.push(value);
        let gain = value - current;
        current = value;
        if gain <= opts.rel_tol * value.abs() {
            break;
        }
    }
    Climb {
        value: current,
        vectors: x,
        trace,
    }
}

/// Maximizer of `|sum_j c_j x_j|` over the unit `l_p` ball and its value
/// `||c||_{p*}`; `None` when `c = 0`.
pub(crate) fn best_response(c: &[Scalar], p: f64, dual: f64) -> Option<(Vec<Scalar>, f64)> {
    let moduli: Vec<f64> = c.iter().map(|z| z.norm()).collect();
    if moduli.iter().all(|&r| r == 0.0) {
        return None;
    }
    let phase = |j: usize| {
        if moduli[j] == 0.0 {
            Scalar::new(1.0, 0.0)
        } else {
            c[j].conj() / moduli[j]
        }
    };
    let n = c.len();
    if p.is_infinite() {
        let x = (0..n).map(phase).collect();
        return Some((x, pairwise_sum(&moduli)));
    }
    if p == 1.0 {
        let k = moduli
            .iter()
            .enumerate()
            .fold(0, |best, (j, &r)| if r > moduli[best] { j } else { best });
        let mut x = vec![Scalar::new(0.0, 0.0); n];
        x[k] = phase(k);
        return Some((x, moduli[k]));
    }
    let value = lr_norm(&moduli, dual);
    let x = (0..n)
        .map(|j| phase(j) * (moduli[j] / value).powf(dual - 1.0))
        .collect();
    Some((x, value))
}

pub(crate) fn random_start<R: Rng>(
    rng: &mut R,
    order: usize,
    dim: usize,
    field: ScalarField,
    ball: BallSpec,
) -> Vec<Vec<Scalar>> {
    (0..order)
        .map(|_| {
            let mut v: Vec<Scalar> = (0..dim)
                .map(|_| match field {
                    ScalarField::Real => Scalar::new(rng.random_range(-1.0..=1.0), 0.0),
                    ScalarField::Complex => {
                        let r: f64 = rng.random_range(0.0..=1.0);
                        let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
                        Scalar::from_polar(r, theta)
                    }
                })
                .collect();
            if !ball.is_linf() {
                let moduli: Vec<f64> = v.iter().map(|z| z.norm()).collect();
                let norm = ball.norm_of(&moduli);
                if norm > 0.0 {
                    v.iter_mut().for_each(|z| *z /= norm);
                }
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::{holder_diag_bound, sup_norm_linf_exact};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn littlewood() -> CoefficientTensor {
        CoefficientTensor::from_real_entries(2, 2, &[1.0, 1.0, 1.0, -1.0]).unwrap()
    }

    #[test]
    fn littlewood_matches_exact() {
        let r = sup_norm_ascent(&littlewood(), BallSpec::linf(), 20, 1);
        assert!(!r.exact);
        assert_relative_eq!(r.value, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn zero_tensor() {
        let z = CoefficientTensor::zeros(3, 3, ScalarField::Real).unwrap();
        assert_eq!(
            sup_norm_ascent(&z, BallSpec::new(3.0).unwrap(), 4, 9).value,
            0.0
        );
    }

    #[test]
    fn diagonal_form_on_lp_respects_holder() {
        // U = sum_i x_i y_i z_i on l_5^4
        let t = CoefficientTensor::from_real_fn(3, 4, |i| {
            let c = i.components();
            (c[0] == c[1] && c[1] == c[2]) as u8 as f64
        })
        .unwrap();
        let r = sup_norm_ascent(&t, BallSpec::new(5.0).unwrap(), 20, 3);
        let bound = holder_diag_bound(4, 5.0, 3).unwrap();
        assert!(r.value <= bound * (1.0 + 1e-9));
        assert_relative_eq!(r.value, bound, epsilon = 1e-6);
    }

    #[test]
    fn certificate_stays_in_ball() {
        let t = CoefficientTensor::from_real_fn(2, 5, |i| {
            (i.components()[0] as f64 - i.components()[1] as f64).sin()
        })
        .unwrap();
        for p in [1.0, 1.5, 2.0, 4.0] {
            let ball = BallSpec::new(p).unwrap();
            let r = sup_norm_ascent(&t, ball, 5, 11);
            for v in r.certificate.vectors() {
                let moduli: Vec<f64> = v.iter().map(|z| z.norm()).collect();
                assert!(ball.norm_of(&moduli) <= 1.0 + 1e-12);
            }
        }
    }

    #[test]
    fn matrix_on_l2_is_spectral_norm() {
        // [[2,1],[1,2]] has largest singular value 3
        let t = CoefficientTensor::from_real_entries(2, 2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        let r = sup_norm_ascent(&t, BallSpec::new(2.0).unwrap(), 5, 0);
        assert_relative_eq!(r.value, 3.0, epsilon = 1e-9);
    }

    #[test]
    fn complex_linf_phase_alignment() {
        let i = Scalar::new(0.0, 1.0);
        let one = Scalar::new(1.0, 0.0);
        let t = CoefficientTensor::from_entries(1, 3, ScalarField::Complex, vec![one, i, -one - i])
            .unwrap();
        let r = sup_norm_ascent(&t, BallSpec::linf(), 3, 5);
        assert_relative_eq!(r.value, 2.0 + 2f64.sqrt(), epsilon = 1e-12);
        // complex 2x2 Littlewood matrix: sup over the complex polydisc of |x1 y1 + x1 y2 + x2 y1 - x2 y2| is 2 sqrt 2
        let lw =
            CoefficientTensor::from_entries(2, 2, ScalarField::Complex, vec![one, one, one, -one])
                .unwrap();
        let r = sup_norm_ascent(&lw, BallSpec::linf(), 20, 5);
        assert!(r.value >= 2.0 && r.value <= 2.0 * 2f64.sqrt() + 1e-9);
    }

    #[test]
    fn deterministic_per_seed() {
        let t = CoefficientTensor::from_real_fn(3, 4, |i| {
            ((i.components().iter().sum::<usize>() * 13) % 5) as f64 - 2.0
        })
        .unwrap();
        let a = sup_norm_ascent(&t, BallSpec::new(3.0).unwrap(), 8, 77);
        let b = sup_norm_ascent(&t, BallSpec::new(3.0).unwrap(), 8, 77);
        assert_eq!(a, b);
    }

    proptest! {
        #[test]
        fn objective_never_decreases(entries in prop::collection::vec(-2.0f64..2.0, 27), p in prop::sample::select(vec![1.0, 1.5, 2.0, 3.0, f64::INFINITY]), seed in any::<u64>()) {
            let t = CoefficientTensor::from_real_entries(3, 3, &entries).unwrap();
            let ball = BallSpec::new(p).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let start = random_start(&mut rng, 3, 3, ScalarField::Real, ball);
            let c = climb(&t, ball, start, &AscentOptions::new(1, seed));
            for w in c.trace.windows(2) {
                prop_assert!(w[1] >= w[0] * (1.0 - 1e-12) - 1e-15);
            }
        }

        #[test]
        fn ascent_is_sound_lower_bound(entries in prop::collection::vec(-3i32..=3, 18), seed in any::<u64>()) {
            let vals: Vec<f64> = entries.iter().map(|&v| v as f64).collect();
            let t = CoefficientTensor::from_real_entries(2, 3, &vals[..9]).unwrap();
            let exact = sup_norm_linf_exact(&t).unwrap().value;
            let lower = sup_norm_ascent(&t, BallSpec::linf(), 3, seed).value;
            prop_assert!(lower <= exact + 1e-9);
        }

        #[test]
        fn sup_norms_are_homogeneous(entries in prop::collection::vec(-2.0f64..2.0, 8), alpha in -20.0f64..20.0) {
            let t = CoefficientTensor::from_real_entries(3, 2, &entries).unwrap();
            let s = t.scaled(Scalar::new(alpha, 0.0)).unwrap();
            let e0 = sup_norm_linf_exact(&t).unwrap().value;
            let e1 = sup_norm_linf_exact(&s).unwrap().value;
            prop_assert!((e1 - alpha.abs() * e0).abs() <= 1e-12 * e1.max(1e-300));
        }
    }
}
