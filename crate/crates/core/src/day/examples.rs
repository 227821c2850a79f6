//! Small categories and Day coalgebras used by the tests, the examples and
//! the acceptance suites.

use std::sync::Arc;

use rand::Rng;

use super::{day_convolve, DayCoalgebra, DayPresheaf, LinearMonoidalCategory, NatTrans};
use crate::coalg::{tensor, ArtinAlgebra, Coalgebra};
use crate::corpus;
use crate::field::{Elem, Field, Poly};
use crate::linalg::Matrix;

fn unit(k: &Field, n: usize, i: usize) -> Vec<Elem> {
    (0..n).map(|j| if i == j { k.one() } else { k.zero() }).collect()
}

/// `ℤ/2`, `ℤ/3`, the posets `0 ≤ 1` and `0 ≤ 1 ≤ 2` under `max`, the
/// one-object category on `k[x]/(x²)`, and `ℤ/2 × {0 ≤ 1}`.
pub fn standard_categories(k: &Field) -> Vec<Arc<LinearMonoidalCategory>> {
    let dual = ArtinAlgebra::quotient_ring(&Poly::from_i64s(k, &[0, 0, 1])).expect("x² is monic");
    let z2 = LinearMonoidalCategory::group_discrete(k, 2);
    let p2 = LinearMonoidalCategory::poset_max(k, 2);
    vec![
        Arc::new(z2.clone()),
        Arc::new(LinearMonoidalCategory::group_discrete(k, 3)),
        Arc::new(p2.clone()),
        Arc::new(LinearMonoidalCategory::poset_max(k, 3)),
        Arc::new(LinearMonoidalCategory::one_object(&dual).expect("commutative algebra")),
        Arc::new(LinearMonoidalCategory::product(&z2, &p2).expect("same field")),
    ]
}

/// `x_0, …, x_{d−1}` with `Δx_n = Σ_{i+j=n} x_i ⊗ x_j`.
pub fn divided_powers(k: &Field, d: usize) -> Coalgebra {
    let delta = Matrix::from_fn(k, d * d, d, |r, n| if r / d + r % d == n { k.one() } else { k.zero() });
    let eps = Matrix::from_fn(k, 1, d, |_, n| if n == 0 { k.one() } else { k.zero() });
    Coalgebra::new(k, delta, eps).expect("divided power shapes")
}

/// `F(0) = {g, t}`, `F(1) = {v}` on `0 ≤ 1`, `v ↦ t`, with
/// `Δv = [g ⊗ v] + [v ⊗ g]`.
pub fn poset_example(k: &Field) -> DayCoalgebra {
    let c = Arc::new(LinearMonoidalCategory::poset_max(k, 2));
    let rho = Matrix::from_i64(k, &[&[0], &[1]]);
    let f = DayPresheaf::from_fn(c, vec![2, 1], |x, y, _| match (x, y) {
        (0, 1) => rho.clone(),
        _ => Matrix::identity(k, if x == 0 { 2 } else { 1 }),
    })
    .expect("functorial");
    let sq = day_convolve(&f, &f).expect("same category");
    let one = [k.one()];
    let e = |n, i| unit(k, n, i);
    let pieces = |u: usize, terms: &[(usize, usize, Vec<Elem>, Vec<Elem>)]| -> Vec<Elem> {
        let mut v = vec![k.zero(); sq.t_dim(u)];
        for (x, y, s, t) in terms {
            for (o, p) in v.iter_mut().zip(sq.t_vector(u, *x, *y, &one, s, t)) {
                *o = k.add(o, &p);
            }
        }
        v
    };
    let d0 = Matrix::from_columns(
        k,
        sq.t_dim(0),
        &[pieces(0, &[(0, 0, e(2, 0), e(2, 0))]), pieces(0, &[(0, 0, e(2, 0), e(2, 1)), (0, 0, e(2, 1), e(2, 0))])],
    );
    let d1 = Matrix::from_columns(k, sq.t_dim(1), &[pieces(1, &[(0, 1, e(2, 0), e(1, 0)), (1, 0, e(1, 0), e(2, 0))])]);
    let eps = NatTrans { components: vec![Matrix::from_i64(k, &[&[1, 0]]), Matrix::zeros(k, 0, 1)] };
    DayCoalgebra::from_representatives(f, vec![d0, d1], eps).expect("coalgebra shapes")
}

/// A fixed list covering graded, unit-concentrated and genuinely
/// presheaf-shaped coalgebras.
pub fn example_coalgebras(k: &Field) -> Vec<DayCoalgebra> {
    let z3 = Arc::new(LinearMonoidalCategory::group_discrete(k, 3));
    let z2 = Arc::new(LinearMonoidalCategory::group_discrete(k, 2));
    let p2 = Arc::new(LinearMonoidalCategory::poset_max(k, 2));
    let dual = Coalgebra::dual_numbers(k);
    let dual2 = tensor(&dual, &dual);
    vec![
        DayCoalgebra::graded(z2.clone(), &dual, &[0, 1]).expect("graded"),
        DayCoalgebra::graded(z3, &divided_powers(k, 4), &[0, 1, 2, 0]).expect("graded"),
        DayCoalgebra::graded(z2, &dual2, &[0, 1, 1, 0]).expect("graded"),
        DayCoalgebra::at_unit(p2.clone(), &dual).expect("at unit"),
        poset_example(k),
        poset_example(k).direct_sum(&DayCoalgebra::at_unit(p2, &Coalgebra::trivial(k)).expect("at unit")).expect("same category"),
    ]
}

/// A random Day coalgebra of total dimension at most about `max_dim`.
pub fn random_day_coalgebra<R: Rng + ?Sized>(k: &Field, max_dim: usize, rng: &mut R) -> (String, DayCoalgebra) {
    let max_dim = max_dim.max(2);
    match rng.gen_range(0..5) {
        0 => {
            let p = rng.gen_range(2..=3);
            let cat = Arc::new(LinearMonoidalCategory::poset_max(k, p));
            let c = corpus::random_coalgebra(k, max_dim, rng);
            (format!("at_unit(poset {p}, {})", c.recipe), DayCoalgebra::at_unit(cat, &c.coalgebra).expect("at unit"))
        }
        1 => {
            // x_i in degree i·g is compatible with Δx_n = Σ x_i ⊗ x_{n−i}
            let n = rng.gen_range(2..=3);
            let d = rng.gen_range(1..=max_dim.min(4));
            let g = rng.gen_range(0..n);
            let degrees: Vec<usize> = (0..d).map(|i| i * g % n).collect();
            let cat = Arc::new(LinearMonoidalCategory::group_discrete(k, n));
            let day = DayCoalgebra::graded(cat, &divided_powers(k, d), &degrees).expect("graded");
            (format!("graded divided powers {d} over Z/{n}, step {g}"), day)
        }
        2 => {
            let n = rng.gen_range(2..=3);
            let (a, b) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
            let (g, h) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let c = tensor(&divided_powers(k, a), &divided_powers(k, b));
            let degrees: Vec<usize> = (0..a * b).map(|r| ((r / b) * g + (r % b) * h) % n).collect();
            let cat = Arc::new(LinearMonoidalCategory::group_discrete(k, n));
            let day = DayCoalgebra::graded(cat, &c, &degrees).expect("graded");
            (format!("graded tensor of divided powers {a}, {b} over Z/{n}"), day)
        }
        3 => {
            let cat = Arc::new(LinearMonoidalCategory::poset_max(k, 2));
            let c = corpus::random_coalgebra(k, (max_dim.saturating_sub(3)).max(1), rng);
            let rest = DayCoalgebra::at_unit(cat, &c.coalgebra).expect("at unit");
            let sum = poset_example(k).direct_sum(&rest).expect("same category");
            (format!("poset example ⊕ at_unit({})", c.recipe), sum)
        }
        _ => ("poset example".to_string(), poset_example(k)),
    }
}
