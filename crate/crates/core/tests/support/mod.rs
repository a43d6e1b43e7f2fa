//! Random generators and independent oracles shared by property and
//! acceptance tests.
#![allow(dead_code)]

use num_traits::{One, Zero};
use pairgeom::scalar::{int, ratio};
use pairgeom::{Endomorphism, KForm, LieAlgebraModel, Matrix, Scalar, TangentVector};
use proptest::prelude::*;

pub fn config() -> ProptestConfig {
    ProptestConfig::with_cases(1000)
}

pub fn scalar() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| ratio(p, q))
}

pub fn form(n: usize, p: usize) -> BoxedStrategy<KForm> {
    let idx: Vec<usize> = (0..n).collect();
    prop::collection::vec((prop::sample::subsequence(idx, p), scalar()), 0..5)
        .prop_map(move |terms| {
            terms.into_iter().fold(KForm::zero(n, p), |acc, (t, c)| {
                &acc + &KForm::monomial(n, &t, c).unwrap()
            })
        })
        .boxed()
}

pub fn vector(n: usize) -> impl Strategy<Value = TangentVector> {
    prop::collection::vec(scalar(), n).prop_map(TangentVector::new)
}

/// Invertible matrix as a product of unitriangular factors and a permutation.
pub fn invertible(n: usize) -> impl Strategy<Value = Matrix> {
    let tri = prop::collection::vec(-2i64..=2, n * n);
    (tri.clone(), tri, Just((0..n).collect::<Vec<_>>()).prop_shuffle()).prop_map(move |(l, u, perm)| {
        let lower = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Equal => Scalar::one(),
            std::cmp::Ordering::Greater => int(l[i * n + j]),
            std::cmp::Ordering::Less => Scalar::zero(),
        });
        let upper = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Equal => Scalar::one(),
            std::cmp::Ordering::Less => int(u[i * n + j]),
            std::cmp::Ordering::Greater => Scalar::zero(),
        });
        let p = Matrix::from_fn(n, n, |i, j| if perm[j] == i { Scalar::one() } else { Scalar::zero() });
        lower.mul(&upper).unwrap().mul(&p).unwrap()
    })
}

pub fn permutation(n: usize) -> impl Strategy<Value = Matrix> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(move |perm| Matrix::from_fn(n, n, |i, j| if perm[j] == i { Scalar::one() } else { Scalar::zero() }))
}

pub type Entries = Vec<(usize, usize, usize, i64)>;

/// Small Lie algebras as bracket tables `(i, j, k, c)`: `[e_i, e_j] += c e_k`.
pub fn building_blocks() -> Vec<(usize, Entries)> {
    vec![
        (1, vec![]),
        (2, vec![(0, 1, 1, 1)]),
        (3, vec![(0, 1, 2, 1)]),
        (3, vec![(0, 1, 2, 1), (1, 2, 0, -1), (0, 2, 1, 1)]),
        (3, vec![(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1)]),
        (4, vec![(0, 1, 2, 1), (0, 2, 3, 1)]),
        (5, vec![(0, 1, 4, 1), (2, 3, 4, 1)]),
        (3, vec![(0, 1, 1, 1), (0, 2, 2, -1)]),
    ]
}

/// All direct sums of building blocks of total dimension `n`.
pub fn sums(n: usize) -> Vec<Entries> {
    fn go(n: usize, from: usize, offset: usize, acc: Entries, out: &mut Vec<Entries>) {
        if offset == n {
            out.push(acc);
            return;
        }
        for (b, (d, entries)) in building_blocks().into_iter().enumerate().skip(from) {
            if offset + d <= n {
                let mut next = acc.clone();
                next.extend(entries.iter().map(|&(i, j, k, c)| (i + offset, j + offset, k + offset, c)));
                go(n, b, offset + d, next, out);
            }
        }
    }
    let mut out = Vec::new();
    go(n, 0, 0, Vec::new(), &mut out);
    out
}

pub fn build(n: usize, entries: &Entries) -> LieAlgebraModel {
    LieAlgebraModel::from_brackets(n, entries.iter().map(|&(i, j, k, c)| (i, j, k, int(c)))).unwrap()
}

/// A Lie algebra of dimension `n`, in a random basis.
pub fn lie_algebra(n: usize) -> impl Strategy<Value = LieAlgebraModel> {
    (prop::sample::select(sums(n)), invertible(n))
        .prop_map(move |(entries, p)| build(n, &entries).change_basis(&p).unwrap())
}

pub fn dim() -> impl Strategy<Value = usize> {
    2usize..=6
}

pub fn sign_of_permutation(perm: &[usize]) -> i64 {
    let mut sign = 1;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                sign = -sign;
            }
        }
    }
    sign
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// `a(v_1, .., v_k)` from the alternating sum over permutations.
pub fn evaluate_oracle(a: &KForm, vs: &[TangentVector]) -> Scalar {
    let mut total = Scalar::zero();
    for (t, c) in a.terms() {
        let idx = t.indices();
        for perm in permutations(idx.len()) {
            let mut prod = int(sign_of_permutation(&perm));
            for (s, &i) in idx.iter().enumerate() {
                prod *= &vs[perm[s]].components()[i];
            }
            total += &(prod * c);
        }
    }
    total
}

/// Jacobi identity straight from the structure constants.
pub fn jacobi_oracle(m: &LieAlgebraModel) -> bool {
    let n = m.dim();
    let c = |i: usize, j: usize, k: usize| m.structure_constant(i, j, k).clone();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut s = Scalar::zero();
                    for r in 0..n {
                        s += c(j, k, r) * c(i, r, l) + c(k, i, r) * c(j, r, l) + c(i, j, r) * c(k, r, l);
                    }
                    if !s.is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn conjugate(j: &Matrix, p: &Matrix) -> Endomorphism {
    let pinv = p.inverse().unwrap();
    Endomorphism::new(p.mul(j).unwrap().mul(&pinv).unwrap()).unwrap()
}

pub fn standard_complex(n: usize) -> Matrix {
    Matrix::from_fn(n, n, |i, j| {
        if i % 2 == 1 && j == i - 1 {
            Scalar::one()
        } else if i % 2 == 0 && j == i + 1 {
            -Scalar::one()
        } else {
            Scalar::zero()
        }
    })
}
