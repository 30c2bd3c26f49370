//! Quadratic forms over GF(2).
//!
//! A form `g` on `V = GF(2)^dim` is stored as the Gram matrix of its
//! bilinear form `B` together with the values `g(eᵢ)` on the standard basis.
//! Those two pieces determine `g` through `g(x + y) = g(x) + g(y) + B(x, y)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{parse_bits, BitMatrix, BitVector};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    gram: BitMatrix,
    basis_g: BitVector,
    /// Strict upper triangle of `gram`, used by polarization.
    upper: BitMatrix,
    nondegenerate: bool,
}

/// A basis `a₁…aₙ, b₁…bₙ` with `B(aᵢ, aⱼ) = B(bᵢ, bⱼ) = 0` and
/// `B(aᵢ, bⱼ) = δᵢⱼ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticBasis {
    pub a: Vec<BitVector>,
    pub b: Vec<BitVector>,
}

impl SymplecticBasis {
    pub fn genus(&self) -> usize {
        self.a.len()
    }

    /// Checks every pairing relation against `form`.
    pub fn is_valid_for(&self, form: &QuadraticForm) -> bool {
        let n = self.a.len();
        if self.b.len() != n || 2 * n != form.dim() {
            return false;
        }
        (0..n).all(|i| {
            (0..n).all(|j| {
                !form.b(&self.a[i], &self.a[j])
                    && !form.b(&self.b[i], &self.b[j])
                    && form.b(&self.a[i], &self.b[j]) == (i == j)
            })
        })
    }

    /// Basis vectors interleaved as `a₁, b₁, a₂, b₂, …`.
    pub fn interleaved(&self) -> Vec<BitVector> {
        self.a
            .iter()
            .zip(&self.b)
            .flat_map(|(a, b)| [a.clone(), b.clone()])
            .collect()
    }
}

/// Gram matrix of the standard intersection form in the basis
/// `a₁, b₁, …, aₙ, bₙ`: block diagonal with `n` copies of `[[0,1],[1,0]]`.
pub fn hyperbolic_gram(genus: usize) -> BitMatrix {
    let mut g = BitMatrix::zeros(2 * genus, 2 * genus);
    for i in 0..genus {
        g.set(2 * i, 2 * i + 1, true);
        g.set(2 * i + 1, 2 * i, true);
    }
    g
}

impl QuadraticForm {
    /// Builds a form from its Gram matrix and basis values. The Gram matrix
    /// must be symmetric with zero diagonal; degenerate forms are accepted.
    pub fn new(gram: BitMatrix, basis_g: BitVector) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch {
                expected: gram.rows(),
                found: gram.cols(),
            });
        }
        let dim = gram.rows();
        if basis_g.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: basis_g.len(),
            });
        }
        let mut upper = BitMatrix::zeros(dim, dim);
        for i in 0..dim {
            if gram.get(i, i) {
                return Err(Error::InvalidGram);
            }
            for j in 0..dim {
                if gram.get(i, j) != gram.get(j, i) {
                    return Err(Error::InvalidGram);
                }
                if j > i && gram.get(i, j) {
                    upper.set(i, j, true);
                }
            }
        }
        let nondegenerate = gram.is_invertible();
        Ok(QuadraticForm {
            gram,
            basis_g,
            upper,
            nondegenerate,
        })
    }

    /// The form of genus `basis_g.len() / 2` over the standard intersection
    /// Gram.
    pub fn standard(basis_g: BitVector) -> Result<Self> {
        if !basis_g.len().is_multiple_of(2) {
            return Err(Error::Precondition(format!(
                "standard forms need an even number of basis values, got {}",
                basis_g.len()
            )));
        }
        Self::new(hyperbolic_gram(basis_g.len() / 2), basis_g)
    }

    /// The form on the zero space.
    pub fn empty() -> Self {
        Self::new(BitMatrix::zeros(0, 0), BitVector::zeros(0)).expect("empty form is valid")
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &BitMatrix {
        &self.gram
    }

    pub fn basis_g(&self) -> &BitVector {
        &self.basis_g
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.nondegenerate
    }

    fn check_len(&self, v: &BitVector) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        Ok(())
    }

    fn require_nondegenerate(&self) -> Result<()> {
        if self.nondegenerate {
            Ok(())
        } else {
            Err(Error::Degenerate)
        }
    }

    /// `g(v) = Σ vᵢ g(eᵢ) + Σ_{i<j} vᵢ vⱼ B(eᵢ, eⱼ)`.
    pub fn evaluate(&self, v: &BitVector) -> Result<bool> {
        self.check_len(v)?;
        Ok(self.g(v))
    }

    /// Unchecked [`QuadraticForm::evaluate`]; panics on a length mismatch.
    pub fn g(&self, v: &BitVector) -> bool {
        let mut acc = v.dot(&self.basis_g);
        for i in v.ones() {
            let row = self.upper.row(i);
            acc ^= row.dot(v);
        }
        acc
    }

    /// `B(x, y) = xᵀ · gram · y`.
    pub fn bilinear(&self, x: &BitVector, y: &BitVector) -> Result<bool> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.b(x, y))
    }

    /// Unchecked [`QuadraticForm::bilinear`]; panics on a length mismatch.
    pub fn b(&self, x: &BitVector, y: &BitVector) -> bool {
        self.gram.mul_vec(y).dot(x)
    }

    /// Linear functional `B(v, ·)` as a row vector.
    fn functional(&self, v: &BitVector) -> BitVector {
        self.gram.mul_vec(v)
    }

    /// Basis of `{x : B(x, v) = 0 for every v in vectors}`.
    pub fn perp(&self, vectors: &[BitVector]) -> Vec<BitVector> {
        if vectors.is_empty() {
            return (0..self.dim())
                .map(|i| BitVector::unit(self.dim(), i))
                .collect();
        }
        let rows: Vec<BitVector> = vectors.iter().map(|v| self.functional(v)).collect();
        BitMatrix::from_rows(self.dim(), &rows).kernel_basis()
    }

    /// Solves `B(uᵢ, x) = rhsᵢ` for all constraints, free variables zero.
    /// Returns a particular solution and a basis of the homogeneous
    /// solutions.
    fn solve_pairings(
        &self,
        constraints: &[(BitVector, bool)],
    ) -> Option<(BitVector, Vec<BitVector>)> {
        let rows: Vec<BitVector> = constraints
            .iter()
            .map(|(u, _)| self.functional(u))
            .collect();
        let rhs = BitVector::from_bits(&constraints.iter().map(|&(_, r)| r).collect::<Vec<_>>());
        let m = BitMatrix::from_rows(self.dim(), &rows);
        let x = m.solve(&rhs).expect("constraint count matches rhs")?;
        Some((x, m.kernel_basis()))
    }

    /// A vector of `span(basis)` on which `g(v) + B(shift, v) = 1`, chosen
    /// deterministically: the first basis vector that works, else the sum of
    /// the first pair with `B = 1`. `None` when the shifted form vanishes on
    /// the whole span.
    fn find_value_one(&self, basis: &[BitVector], shift: Option<&BitVector>) -> Option<BitVector> {
        let h = |v: &BitVector| self.g(v) ^ shift.is_some_and(|s| self.b(s, v));
        if let Some(v) = basis.iter().find(|v| h(v)) {
            return Some(v.clone());
        }
        for (i, u) in basis.iter().enumerate() {
            if let Some(w) = basis[i + 1..].iter().find(|w| self.b(u, w)) {
                return Some(u.add(w));
            }
        }
        None
    }

    /// A symplectic basis, built by repeatedly splitting off a hyperbolic
    /// pair: take the first remaining vector `x`, the first remaining `y`
    /// with `B(x, y) = 1`, and project everything else onto `⟨x, y⟩^⊥`.
    pub fn symplectic_basis(&self) -> Result<SymplecticBasis> {
        self.require_nondegenerate()?;
        let n = self.dim();
        let mut remaining: Vec<BitVector> = (0..n).map(|i| BitVector::unit(n, i)).collect();
        let (mut a, mut b) = (Vec::new(), Vec::new());
        while !remaining.is_empty() {
            let x = remaining.remove(0);
            let k = remaining
                .iter()
                .position(|y| self.b(&x, y))
                .ok_or(Error::Degenerate)?;
            let y = remaining.remove(k);
            for v in remaining.iter_mut() {
                let (bx, by) = (self.b(v, &x), self.b(v, &y));
                if by {
                    v.add_assign(&x);
                }
                if bx {
                    v.add_assign(&y);
                }
            }
            a.push(x);
            b.push(y);
        }
        Ok(SymplecticBasis { a, b })
    }

    /// A symplectic basis with `g(aᵢ) = 1` for every `i`, obtained by
    /// swapping or merging pairs of a plain symplectic basis.
    pub fn symplectic_basis_with_odd_a(&self) -> Result<SymplecticBasis> {
        let mut basis = self.symplectic_basis()?;
        for i in 0..basis.genus() {
            if self.g(&basis.a[i]) {
                continue;
            }
            if self.g(&basis.b[i]) {
                std::mem::swap(&mut basis.a[i], &mut basis.b[i]);
            } else {
                let merged = basis.a[i].add(&basis.b[i]);
                basis.a[i] = merged;
            }
        }
        Ok(basis)
    }

    /// Given independent, mutually orthogonal `a₁…aₖ`, returns `b₁…bₖ` with
    /// `B(bᵢ, bⱼ) = 0` and `B(aᵢ, bⱼ) = δᵢⱼ`.
    pub fn complete_isotropic(&self, a: &[BitVector]) -> Result<Vec<BitVector>> {
        self.require_nondegenerate()?;
        for v in a {
            self.check_len(v)?;
        }
        for i in 0..a.len() {
            for j in i..a.len() {
                if self.b(&a[i], &a[j]) {
                    return Err(Error::Precondition(format!(
                        "B(a{}, a{}) = 1",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        if BitMatrix::from_rows(self.dim(), a).rank() != a.len() {
            return Err(Error::Precondition("vectors are not independent".into()));
        }
        let mut b: Vec<BitVector> = Vec::with_capacity(a.len());
        for i in 0..a.len() {
            let mut constraints: Vec<(BitVector, bool)> = a
                .iter()
                .enumerate()
                .map(|(j, aj)| (aj.clone(), i == j))
                .collect();
            constraints.extend(b.iter().map(|bj| (bj.clone(), false)));
            let (x, _) = self
                .solve_pairings(&constraints)
                .expect("pairing system of a non-degenerate form is consistent");
            b.push(x);
        }
        Ok(b)
    }

    /// The Arf invariant `Σ g(aᵢ) g(bᵢ)` over a symplectic basis.
    pub fn arf(&self) -> Result<u8> {
        let basis = self.symplectic_basis()?;
        Ok(basis
            .a
            .iter()
            .zip(&basis.b)
            .fold(0u8, |acc, (a, b)| acc ^ u8::from(self.g(a) && self.g(b))))
    }

    /// Orthogonal direct sum `g₁ ⊕ g₂` on `V₁ ⊕ V₂`.
    pub fn direct_sum(&self, other: &QuadraticForm) -> QuadraticForm {
        QuadraticForm::new(
            self.gram.block_diag(&other.gram),
            self.basis_g.concat(&other.basis_g),
        )
        .expect("block sum of valid Gram matrices is valid")
    }

    /// The form `x ↦ g(P x)` for a square matrix `P`.
    pub fn pullback(&self, p: &BitMatrix) -> Result<QuadraticForm> {
        if p.rows() != self.dim() || !p.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: p.rows(),
            });
        }
        let gram = p.transpose().multiply(&self.gram)?.multiply(p)?;
        let values: Vec<bool> = p.columns().iter().map(|c| self.g(c)).collect();
        QuadraticForm::new(gram, BitVector::from_bits(&values))
    }

    /// A vector `c ∈ W^⊥` with `g(c) = 1` and `B(a₁, c) = B(a₂, c) = 1`,
    /// where `W = ⟨w₁…wₖ⟩` is spanned by independent, mutually orthogonal
    /// vectors with `g = 1` and `a₁, a₂ ∈ W^⊥ ∖ W` satisfy `g(aᵢ) = 1`,
    /// `B(a₁, a₂) = 0`.
    ///
    /// No such vector exists in general for the dimension-2 and
    /// dimension-4 forms of Arf invariant 0. The dimension-4 case is still
    /// served when `k > 0` or `a₁ = a₂`.
    pub fn find_connector(
        &self,
        w: &[BitVector],
        a1: &BitVector,
        a2: &BitVector,
    ) -> Result<BitVector> {
        self.require_nondegenerate()?;
        for v in w.iter().chain([a1, a2]) {
            self.check_len(v)?;
        }
        for (i, wi) in w.iter().enumerate() {
            if !self.g(wi) {
                return Err(Error::Precondition(format!("g(w{}) = 0", i + 1)));
            }
            if let Some(j) = w.iter().position(|wj| self.b(wi, wj)) {
                return Err(Error::Precondition(format!(
                    "B(w{}, w{}) = 1",
                    i + 1,
                    j + 1
                )));
            }
        }
        let w_rank = BitMatrix::from_rows(self.dim(), w).rank();
        if w_rank != w.len() {
            return Err(Error::Precondition("w vectors are not independent".into()));
        }
        for (name, a) in [("a1", a1), ("a2", a2)] {
            if !self.g(a) {
                return Err(Error::Precondition(format!("g({name}) = 0")));
            }
            if w.iter().any(|wi| self.b(a, wi)) {
                return Err(Error::Precondition(format!("{name} is not in W^⊥")));
            }
            let mut with_a = w.to_vec();
            with_a.push(a.clone());
            if BitMatrix::from_rows(self.dim(), &with_a).rank() == w_rank {
                return Err(Error::Precondition(format!("{name} lies in W")));
            }
        }
        if self.b(a1, a2) {
            return Err(Error::Precondition("B(a1, a2) = 1".into()));
        }
        let arf = self.arf()?;
        let excluded =
            arf == 0 && (self.dim() == 2 || (self.dim() == 4 && w.is_empty() && a1 != a2));
        if excluded {
            return Err(Error::ExcludedCase {
                dim: self.dim(),
                arf,
            });
        }

        if let Some(w1) = w.first() {
            let mut constraints: Vec<(BitVector, bool)> =
                w.iter().map(|wi| (wi.clone(), false)).collect();
            constraints.push((a1.clone(), true));
            constraints.push((a2.clone(), true));
            let (b, _) = self
                .solve_pairings(&constraints)
                .expect("a1, a2 outside W give a consistent system");
            return Ok(if self.g(&b) { b } else { b.add(w1) });
        }

        let (b, u) = if a1 == a2 {
            let (b, _) = self
                .solve_pairings(&[(a1.clone(), true)])
                .expect("a1 is non-zero");
            if self.g(&b) {
                return Ok(b);
            }
            let u = vec![a1.clone(), b.clone()];
            (b, u)
        } else {
            let bs = self.complete_isotropic(&[a1.clone(), a2.clone()])?;
            let b = bs[0].add(&bs[1]);
            if self.g(&b) {
                return Ok(b);
            }
            let u = vec![a1.clone(), a2.clone(), bs[0].clone(), bs[1].clone()];
            (b, u)
        };
        let d = self
            .find_value_one(&self.perp(&u), None)
            .ok_or(Error::ExcludedCase {
                dim: self.dim(),
                arf,
            })?;
        Ok(b.add(&d))
    }

    /// Vectors `c₁(, c₂)` with `g(cᵢ) = 1` such that applying `T_{c₁}` and
    /// then `T_{c₂}` carries `x` to `y`. Inputs with `g(x) = g(y) = 0` are
    /// supported as well.
    pub fn find_transvection_path(&self, x: &BitVector, y: &BitVector) -> Result<Vec<BitVector>> {
        self.find_transvection_path_fixing(x, y, &[])
    }

    /// As [`QuadraticForm::find_transvection_path`], with every returned
    /// transvection additionally fixing each vector of `fixed`, i.e. each
    /// `cᵢ` is orthogonal to `fixed`. Requires `x + y ∈ fixed^⊥`.
    pub fn find_transvection_path_fixing(
        &self,
        x: &BitVector,
        y: &BitVector,
        fixed: &[BitVector],
    ) -> Result<Vec<BitVector>> {
        for v in fixed.iter().chain([x, y]) {
            self.check_len(v)?;
        }
        if x.is_zero() || y.is_zero() {
            return Err(Error::Precondition(
                "path endpoints must be non-zero".into(),
            ));
        }
        if x == y {
            return Err(Error::Precondition("path endpoints must differ".into()));
        }
        let gx = self.g(x);
        if gx != self.g(y) {
            return Err(Error::Precondition("g(x) != g(y)".into()));
        }
        let sum = x.add(y);
        if fixed.iter().any(|w| self.b(&sum, w)) {
            return Err(Error::Precondition(
                "x + y is not orthogonal to the fixed vectors".into(),
            ));
        }
        if self.b(x, y) {
            return Ok(vec![sum]);
        }
        let no_path = || Error::NoPath {
            from: x.to_string(),
            to: y.to_string(),
        };
        // z must satisfy B(x,z) = B(y,z) = 1, B(w,z) = B(w,x) and g(z) = g(x);
        // the intermediate stop is then T_{x+z}(x) = z.
        let mut constraints = vec![(x.clone(), true), (y.clone(), true)];
        constraints.extend(fixed.iter().map(|w| (w.clone(), self.b(w, x))));
        let (z0, kernel) = self.solve_pairings(&constraints).ok_or_else(no_path)?;
        let z = if self.g(&z0) == gx {
            z0
        } else {
            let k = self
                .find_value_one(&kernel, Some(&z0))
                .ok_or_else(no_path)?;
            z0.add(&k)
        };
        Ok(vec![x.add(&z), z.add(y)])
    }

    /// Renders the form text format.
    pub fn to_text(&self) -> String {
        let mut s = format!("form {}\n", self.dim());
        s.push_str(format!("g {}", self.basis_g).trim_end());
        s.push('\n');
        for i in 0..self.dim() {
            s.push_str(&self.gram.row(i).to_bit_string());
            s.push('\n');
        }
        s
    }

    /// Parses `form <dim>`, `g <bits>`, then `dim` Gram rows.
    pub fn from_text(text: &str) -> Result<QuadraticForm> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (ln, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty form text"))?;
        let dim = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["form", d] => d
                .parse::<usize>()
                .map_err(|_| Error::parse(ln + 1, "invalid form dimension"))?,
            _ => return Err(Error::parse(ln + 1, "expected `form <dim>`")),
        };
        let (ln, gline) = lines
            .next()
            .ok_or_else(|| Error::parse(ln + 2, "missing `g` line"))?;
        let basis_g = parse_keyword_bits(gline, "g", ln + 1)?;
        if basis_g.len() != dim {
            return Err(Error::parse(
                ln + 1,
                format!("expected {dim} g bits, found {}", basis_g.len()),
            ));
        }
        let mut rows = Vec::with_capacity(dim);
        for i in 0..dim {
            let (rl, row) = lines.next().ok_or_else(|| {
                Error::parse(ln + 2 + i, format!("expected {dim} gram rows, found {i}"))
            })?;
            let r = parse_bits(row, rl + 1)?;
            if r.len() != dim {
                return Err(Error::parse(
                    rl + 1,
                    format!("gram row has {} bits, expected {dim}", r.len()),
                ));
            }
            rows.push(r);
        }
        if let Some((rl, _)) = lines.next() {
            return Err(Error::parse(rl + 1, "trailing content after gram rows"));
        }
        QuadraticForm::new(BitMatrix::from_rows(dim, &rows), basis_g)
    }
}

/// Parses `<keyword> <bits>`, where the bit string may be empty.
pub(crate) fn parse_keyword_bits(line: &str, keyword: &str, line_no: usize) -> Result<BitVector> {
    let mut parts = line.split_whitespace();
    if parts.next() != Some(keyword) {
        return Err(Error::parse(
            line_no,
            format!("expected `{keyword} <bits>`"),
        ));
    }
    let bits = parts.next().unwrap_or("");
    if parts.next().is_some() {
        return Err(Error::parse(line_no, "unexpected trailing fields"));
    }
    parse_bits(bits, line_no)
}

impl fmt::Debug for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "QuadraticForm(dim={}, g={}, gram={:?})",
            self.dim(),
            self.basis_g,
            self.gram
        )
    }
}
