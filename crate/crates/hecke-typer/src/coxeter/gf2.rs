//! Quadratic forms over GF(2) at brute-force scale.
//!
//! Used for the E8 root-lattice form `q(x) = (x, x)/2 mod 2` on `Q/2Q` and
//! the 4-dimensional minus-type form `q'(x) = x1 x2 + x3^2 + x3 x4 + x4^2`.
//! The Witt index is computed by greedy hyperbolic splitting and
//! cross-checked against exhaustive zero counting.

use crate::weyl::IrreducibleType;

/// Quadratic form `q(x) = sum_{i <= j} c_ij x_i x_j` on `GF(2)^dim`,
/// stored as upper-triangular bit rows (`rows[i]` holds bits `j >= i`;
/// bit `i` of `rows[i]` is the diagonal coefficient).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F2QuadraticForm {
    dim: usize,
    rows: Vec<u32>,
}

/// Forms used by the appendix-level checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormKind {
    /// `q(x) = (x, x)/2 mod 2` on the E8 root lattice mod 2, written in the
    /// simple-root basis: diagonal 1 everywhere (roots have norm 2),
    /// off-diagonal 1 exactly on Dynkin-diagram edges.
    E8Mod2,
    /// `q'(x) = x1 x2 + x3^2 + x3 x4 + x4^2` on `GF(2)^4` (minus type).
    QMinus4,
}

/// Builds one of the named forms.
pub fn build_form(kind: FormKind) -> F2QuadraticForm {
    match kind {
        FormKind::E8Mod2 => {
            let cartan = crate::coxeter::cartan_matrix(IrreducibleType::E { rank: 8 });
            let mut terms: Vec<(usize, usize)> = (0..8).map(|i| (i, i)).collect();
            for (i, row) in cartan.iter().enumerate() {
                // (alpha_i, alpha_j) = -1 exactly on diagram edges
                for (j, &c) in row.iter().enumerate().skip(i + 1) {
                    if c != 0 {
                        terms.push((i, j));
                    }
                }
            }
            F2QuadraticForm::new(8, &terms)
        }
        FormKind::QMinus4 => F2QuadraticForm::new(4, &[(0, 1), (2, 2), (2, 3), (3, 3)]),
    }
}

impl F2QuadraticForm {
    /// Form with the given `x_i x_j` terms (`i <= j`); repeated terms cancel
    /// mod 2.
    pub fn new(dim: usize, terms: &[(usize, usize)]) -> Self {
        assert!(dim <= 31, "dimension {dim} too large for the bit encoding");
        let mut rows = vec![0u32; dim];
        for &(i, j) in terms {
            assert!(i <= j && j < dim, "bad term ({i}, {j}) for dim {dim}");
            rows[i] ^= 1 << j;
        }
        F2QuadraticForm { dim, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Evaluates `q` at a vector given as a bitmask.
    pub fn eval(&self, x: u32) -> u32 {
        debug_assert_eq!(x >> self.dim, 0);
        let mut acc = 0u32;
        let mut bits = x;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            acc ^= (self.rows[i] & x).count_ones() & 1;
        }
        acc
    }

    /// Polar form `b(x, y) = q(x + y) + q(x) + q(y)`; bilinear and
    /// alternating over GF(2).
    pub fn polar(&self, x: u32, y: u32) -> u32 {
        self.eval(x ^ y) ^ self.eval(x) ^ self.eval(y)
    }

    /// Symmetric bit matrix of the polar form (zero diagonal).
    fn polar_matrix(&self) -> Vec<u32> {
        let mut b = vec![0u32; self.dim];
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                if self.rows[i] >> j & 1 == 1 {
                    b[i] |= 1 << j;
                    b[j] |= 1 << i;
                }
            }
        }
        b
    }

    /// Block sum on `GF(2)^(dim_a + dim_b)`.
    pub fn direct_sum(&self, other: &F2QuadraticForm) -> F2QuadraticForm {
        let dim = self.dim + other.dim;
        assert!(dim <= 31);
        let mut rows = self.rows.clone();
        rows.resize(dim, 0);
        for (i, &row) in other.rows.iter().enumerate() {
            rows[self.dim + i] = row << self.dim;
        }
        F2QuadraticForm { dim, rows }
    }

    /// `#{x : q(x) = 0}` by exhaustive evaluation. Needs `dim <= 24`.
    pub fn zero_count(&self) -> u64 {
        assert!(
            self.dim <= 24,
            "zero_count is brute force; dim {} too large",
            self.dim
        );
        (0u32..1 << self.dim).filter(|&x| self.eval(x) == 0).count() as u64
    }

    /// Maximal dimension of a totally singular subspace.
    ///
    /// Greedy hyperbolic splitting: exhaustively find a nonzero singular
    /// vector outside the radical of the polar form, pair it into a
    /// hyperbolic plane, restrict to the orthogonal complement, and recurse.
    /// When no such vector remains, everything left over is the anisotropic
    /// part plus the radical, whose singular subspace is the kernel of the
    /// (linear) restriction of `q`.
    pub fn witt_index(&self) -> usize {
        assert!(
            self.dim <= 24,
            "witt_index is brute force; dim {} too large",
            self.dim
        );
        let mut form = self.clone();
        let mut planes = 0;
        loop {
            let n = form.dim;
            if n == 0 {
                return planes;
            }
            let b = form.polar_matrix();
            let apply = |x: u32| -> u32 {
                let mut acc = 0;
                let mut bits = x;
                while bits != 0 {
                    let i = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    acc ^= b[i];
                }
                acc
            };
            let singular = (1u32..1 << n).find(|&x| form.eval(x) == 0 && apply(x) != 0);
            let Some(x) = singular else {
                // every singular vector lies in rad(b); q is linear there
                let radical = nullspace(&b, n);
                let defect = radical.iter().any(|&r| form.eval(r) == 1);
                return planes + radical.len() - defect as usize;
            };
            let j = apply(x).trailing_zeros();
            let mut y = 1u32 << j;
            if form.eval(y) == 1 {
                // q(y + x) = q(y) + q(x) + b(x, y) = q(y) + 1
                y ^= x;
            }
            debug_assert_eq!(form.eval(x), 0);
            debug_assert_eq!(form.eval(y), 0);
            debug_assert_eq!(form.polar(x, y), 1);

            // project the standard basis onto the complement of <x, y>
            let mut complement: Vec<u32> = Vec::with_capacity(n - 2);
            let mut echelon: Vec<u32> = Vec::new();
            for k in 0..n {
                let e = 1u32 << k;
                let v = e
                    ^ if form.polar(e, y) == 1 { x } else { 0 }
                    ^ if form.polar(e, x) == 1 { y } else { 0 };
                let mut reduced = v;
                for &m in &echelon {
                    reduced = reduced.min(reduced ^ m);
                }
                if reduced != 0 {
                    echelon.push(reduced);
                    complement.push(v);
                }
            }
            assert_eq!(complement.len(), n - 2, "complement of a hyperbolic plane");
            form = form.restrict(&complement);
            planes += 1;
        }
    }

    /// The form in the coordinates of the given independent vectors.
    fn restrict(&self, basis: &[u32]) -> F2QuadraticForm {
        let dim = basis.len();
        let mut rows = vec![0u32; dim];
        for (k, &v) in basis.iter().enumerate() {
            if self.eval(v) == 1 {
                rows[k] |= 1 << k;
            }
            for (l, &w) in basis.iter().enumerate().skip(k + 1) {
                if self.polar(v, w) == 1 {
                    rows[k] |= 1 << l;
                }
            }
        }
        F2QuadraticForm { dim, rows }
    }
}

/// Basis of `{x : Bx = 0}` for a symmetric bit matrix given by rows.
fn nullspace(rows: &[u32], n: usize) -> Vec<u32> {
    // full row reduction, tracking pivot columns
    let mut pivots: Vec<(usize, u32)> = Vec::new();
    for &row in rows {
        let mut r = row;
        for &(c, m) in &pivots {
            if r >> c & 1 == 1 {
                r ^= m;
            }
        }
        if r != 0 {
            let c = r.trailing_zeros() as usize;
            for (_, m) in pivots.iter_mut() {
                if *m >> c & 1 == 1 {
                    *m ^= r;
                }
            }
            pivots.push((c, r));
        }
    }
    let mut basis = Vec::new();
    for f in 0..n {
        if pivots.iter().any(|&(c, _)| c == f) {
            continue;
        }
        // free column f: x_f = 1 forces x_c = m_f for each pivot row
        let mut x = 1u32 << f;
        for &(c, m) in &pivots {
            if m >> f & 1 == 1 {
                x |= 1 << c;
            }
        }
        basis.push(x);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn hyperbolic_plane() -> F2QuadraticForm {
        F2QuadraticForm::new(2, &[(0, 1)])
    }

    #[test]
    fn eval_examples() {
        let q_minus = build_form(FormKind::QMinus4);
        assert_eq!(q_minus.eval(0b0011), 1); // (1,1,0,0): the x1 x2 term
        assert_eq!(q_minus.eval(0), 0);
        let e8 = build_form(FormKind::E8Mod2);
        for i in 0..8 {
            assert_eq!(e8.eval(1 << i), 1, "simple roots have norm 2, so q = 1");
        }
        assert_eq!(e8.eval(0), 0);
    }

    #[test]
    fn polar_form_is_bilinear() {
        let e8 = build_form(FormKind::E8Mod2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let x = rng.gen::<u32>() & 0xff;
            let y = rng.gen::<u32>() & 0xff;
            let z = rng.gen::<u32>() & 0xff;
            assert_eq!(e8.polar(x ^ y, z), e8.polar(x, z) ^ e8.polar(y, z));
            assert_eq!(e8.polar(x, y), e8.polar(y, x));
            assert_eq!(e8.polar(x, x), 0);
        }
    }

    #[test]
    fn zero_counts() {
        assert_eq!(build_form(FormKind::E8Mod2).zero_count(), 136); // 2^7 + 2^3
        assert_eq!(build_form(FormKind::QMinus4).zero_count(), 6); // 2^3 - 2
        assert_eq!(hyperbolic_plane().zero_count(), 3);
        assert_eq!(F2QuadraticForm::new(1, &[]).zero_count(), 2); // zero form
    }

    #[test]
    fn witt_indices() {
        assert_eq!(hyperbolic_plane().witt_index(), 1);
        assert_eq!(build_form(FormKind::QMinus4).witt_index(), 1);
        assert_eq!(build_form(FormKind::E8Mod2).witt_index(), 4);
        let q = build_form(FormKind::QMinus4);
        assert_eq!(q.direct_sum(&q).witt_index(), 4);
        // elliptic plane x1^2 + x1 x2 + x2^2 is anisotropic
        assert_eq!(
            F2QuadraticForm::new(2, &[(0, 0), (0, 1), (1, 1)]).witt_index(),
            0
        );
    }

    #[test]
    fn degenerate_forms() {
        // zero form: everything is singular
        assert_eq!(F2QuadraticForm::new(3, &[]).witt_index(), 3);
        // radical with a defect vector: q = x1^2 on dim 2
        assert_eq!(F2QuadraticForm::new(2, &[(0, 0)]).witt_index(), 1);
        assert_eq!(F2QuadraticForm::new(1, &[(0, 0)]).witt_index(), 0);
        // defective radical next to an elliptic plane: the singular vectors
        // mix the two parts
        let elliptic = F2QuadraticForm::new(2, &[(0, 0), (0, 1), (1, 1)]);
        let defect = F2QuadraticForm::new(1, &[(0, 0)]);
        assert_eq!(defect.direct_sum(&elliptic).witt_index(), 1);
    }

    #[test]
    fn direct_sum_structure() {
        let a = build_form(FormKind::QMinus4);
        let b = hyperbolic_plane();
        let sum = a.direct_sum(&b);
        assert_eq!(sum.dim(), 6);
        // q(x, y) = q(x) + q(y)
        for x in 0..16u32 {
            for y in 0..4u32 {
                assert_eq!(sum.eval(x | y << 4), a.eval(x) ^ b.eval(y));
            }
        }
        // zero count by convolution over value pairs
        let za = a.zero_count();
        let zb = b.zero_count();
        assert_eq!(sum.zero_count(), za * zb + (16 - za) * (4 - zb));
    }

    #[test]
    fn witt_index_matches_zero_count_classification_on_random_forms() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let mut nondegenerate_seen = 0;
        while nondegenerate_seen < 60 {
            let half = rng.gen_range(1..=5usize);
            let dim = 2 * half;
            let mut terms = Vec::new();
            for i in 0..dim {
                for j in i..dim {
                    if rng.gen_bool(0.5) {
                        terms.push((i, j));
                    }
                }
            }
            let form = F2QuadraticForm::new(dim, &terms);
            if !nullspace(&form.polar_matrix(), dim).is_empty() {
                continue; // degenerate; not covered by the classification
            }
            nondegenerate_seen += 1;
            // nondegenerate even-dimensional forms over GF(2) are plus type
            // (witt = dim/2, zeros = 2^(dim-1) + 2^(dim/2-1)) or minus type
            // (witt = dim/2 - 1, zeros = 2^(dim-1) - 2^(dim/2-1))
            let zeros = form.zero_count();
            let witt = form.witt_index();
            let plus = (1u64 << (dim - 1)) + (1 << (half - 1));
            let minus = (1u64 << (dim - 1)) - (1 << (half - 1));
            if zeros == plus {
                assert_eq!(witt, half, "plus type, dim {dim}");
            } else if zeros == minus {
                assert_eq!(witt, half - 1, "minus type, dim {dim}");
            } else {
                panic!("nondegenerate form with impossible zero count {zeros} in dim {dim}");
            }
        }
    }
}
