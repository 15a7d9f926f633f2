//! The 120 projective representatives of S5 acting on hyperplane coordinates.

use std::sync::OnceLock;

use crate::geometry::{chordal, u_of, x_of, Mat4, Vec4, Vec5, ONE, ZERO};

/// Points closer than this (chordal) are identified when deduplicating orbits.
pub const DEDUP_TOL: f64 = 1e-9;

/// A bijection of {0..4}; `images[i]` is where coordinate i is sent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(pub [usize; 5]);

impl Permutation {
    pub fn identity() -> Self {
        Permutation([0, 1, 2, 3, 4])
    }

    pub fn new(images: [usize; 5]) -> Option<Self> {
        let mut seen = [false; 5];
        for &i in &images {
            if i >= 5 || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Permutation(images))
    }

    /// Transposition of two 0-based indices.
    pub fn transposition(a: usize, b: usize) -> Self {
        let mut p = [0, 1, 2, 3, 4];
        p.swap(a, b);
        Permutation(p)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.map(|i| self.0[i]))
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = [0; 5];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    pub fn is_even(&self) -> bool {
        let mut inv = 0;
        for i in 0..5 {
            for j in i + 1..5 {
                if self.0[i] > self.0[j] {
                    inv += 1;
                }
            }
        }
        inv % 2 == 0
    }

    /// Moves coordinate i to slot `self(i)`.
    pub fn act<T: Copy>(&self, x: &[T; 5]) -> [T; 5] {
        let mut y = *x;
        for i in 0..5 {
            y[self.0[i]] = x[i];
        }
        y
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    pub perm: Permutation,
    pub matrix_u: Mat4,
    pub parity: Parity,
}

impl GroupElement {
    pub fn apply_u(&self, u: &Vec4) -> Vec4 {
        self.matrix_u.apply(u)
    }

    pub fn apply_x(&self, x: &Vec5) -> Vec5 {
        self.perm.act(x)
    }
}

/// `H·P·H̄ᵀ` for the permutation matrix `P` of `perm`.
pub fn element(perm: Permutation) -> GroupElement {
    let mut cols = [[ZERO; 4]; 4];
    for (s, col) in cols.iter_mut().enumerate() {
        let mut e = [ZERO; 4];
        e[s] = ONE;
        *col = u_of(&perm.act(&x_of(&e)));
    }
    GroupElement {
        perm,
        matrix_u: Mat4::from_cols(cols),
        parity: if perm.is_even() { Parity::Even } else { Parity::Odd },
    }
}

fn next_permutation(a: &mut [usize; 5]) -> bool {
    let Some(i) = (0..4).rev().find(|&i| a[i] < a[i + 1]) else {
        return false;
    };
    let j = (i + 1..5).rev().find(|&j| a[j] > a[i]).unwrap();
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

/// All 120 elements in lexicographic permutation order, built once.
pub fn all_elements() -> &'static [GroupElement] {
    static ELEMS: OnceLock<Vec<GroupElement>> = OnceLock::new();
    ELEMS.get_or_init(|| {
        let mut p = [0, 1, 2, 3, 4];
        let mut out = vec![element(Permutation(p))];
        while next_permutation(&mut p) {
            out.push(element(Permutation(p)));
        }
        out
    })
}

/// Keeps the first of every cluster of projectively equal points.
pub fn dedup_projective<const N: usize>(pts: impl IntoIterator<Item = [crate::geometry::C; N]>, tol: f64) -> Vec<[crate::geometry::C; N]> {
    let mut out: Vec<[crate::geometry::C; N]> = Vec::new();
    for p in pts {
        if !out.iter().any(|q| chordal(q, &p) < tol) {
            out.push(p);
        }
    }
    out
}

pub fn orbit(p: &Vec4, tol: f64) -> Vec<Vec4> {
    dedup_projective(all_elements().iter().map(|g| g.apply_u(p)), tol)
}

pub fn stabilizer_order(p: &Vec4) -> usize {
    120 / orbit(p, DEDUP_TOL).len()
}
