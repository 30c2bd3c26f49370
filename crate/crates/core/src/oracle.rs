//! Brute-force engines that check the constructive algorithms from the
//! outside: exhaustive group filtering, a democratic Arf count, and
//! homomorphism tables.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::orthogroup::{apply_transvection_left, psi_of_matrix, OrthogonalMap, ENUMERATE_MAX_DIM};
use crate::quadform::QuadraticForm;

/// Largest dimension scanned by [`democratic_arf`] by default.
pub const DEMOCRATIC_MAX_DIM: usize = 20;
/// Largest dimension for [`filter_full_linear_group`]; `2^{d²}` matrices.
pub const FILTER_MAX_DIM: usize = 4;
/// Largest dimension for [`backtrack_orthogonal_group`].
pub const BACKTRACK_MAX_DIM: usize = 6;

/// Environment variable overriding the enumeration and counting guards.
pub const MAX_DIM_ENV: &str = "ARF_ENGINE_MAX_DIM";

/// Resource guards for the exponential-time operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub enumerate_max_dim: usize,
    pub democratic_max_dim: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumerate_max_dim: ENUMERATE_MAX_DIM,
            democratic_max_dim: DEMOCRATIC_MAX_DIM,
        }
    }
}

impl Limits {
    /// Defaults, with both guards replaced by `ARF_ENGINE_MAX_DIM` when it
    /// holds a number.
    pub fn from_env() -> Self {
        match std::env::var(MAX_DIM_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
        {
            Some(max) => Limits {
                enumerate_max_dim: max,
                democratic_max_dim: max,
            },
            None => Limits::default(),
        }
    }
}

/// A finite orthogonal group listed in canonical order with its `ψ` values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    pub form: QuadraticForm,
    pub elements: Vec<BitMatrix>,
    pub psi_values: Vec<u8>,
}

impl GroupTable {
    /// Sorts and deduplicates `elements` and computes their `ψ` values.
    pub fn new(form: &QuadraticForm, mut elements: Vec<BitMatrix>) -> Self {
        elements.sort();
        elements.dedup();
        let psi_values = elements.iter().map(psi_of_matrix).collect();
        GroupTable {
            form: form.clone(),
            elements,
            psi_values,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Structural check: identity present, every element orthogonal, closed
    /// under products and inverses.
    pub fn is_group(&self) -> bool {
        let set: HashSet<&BitMatrix> = self.elements.iter().collect();
        if self.psi_values.len() != self.elements.len()
            || !set.contains(&BitMatrix::identity(self.form.dim()))
        {
            return false;
        }
        for s in &self.elements {
            if !matches!(crate::orthogroup::is_orthogonal(&self.form, s), Ok(true)) {
                return false;
            }
            match s.inverse() {
                Some(inv) if set.contains(&inv) => {}
                _ => return false,
            }
            for t in &self.elements {
                match s.multiply(t) {
                    Ok(p) if set.contains(&p) => {}
                    _ => return false,
                }
            }
        }
        true
    }

    /// `order N`, then one line per element: row-major bits and `ψ`.
    pub fn to_text(&self) -> String {
        let mut out = format!("order {}\n", self.order());
        for (m, psi) in self.elements.iter().zip(&self.psi_values) {
            let _ = writeln!(out, "{} {}", m.to_bit_string(), psi);
        }
        out
    }
}

/// Every invertible matrix that preserves `f`, by scanning all `2^{d²}`
/// matrices.
pub fn filter_full_linear_group(f: &QuadraticForm) -> Result<GroupTable> {
    let d = f.dim();
    if d > FILTER_MAX_DIM {
        return Err(Error::DimensionGuard {
            dim: d,
            max: FILTER_MAX_DIM,
        });
    }
    let mut found = Vec::new();
    for bits in 0u64..(1u64 << (d * d)) {
        let mut m = BitMatrix::zeros(d, d);
        for k in (0..d * d).filter(|k| bits >> k & 1 == 1) {
            m.set(k / d, k % d, true);
        }
        if crate::orthogroup::is_orthogonal(f, &m)? {
            found.push(m);
        }
    }
    Ok(GroupTable::new(f, found))
}

/// Every orthogonal matrix of `f`, built column by column: the image of
/// `eⱼ` must have `g = g(eⱼ)` and pair with earlier images as `eⱼ` does.
/// Uses no transvections, so it checks the closure independently.
pub fn backtrack_orthogonal_group(f: &QuadraticForm) -> Result<GroupTable> {
    let d = f.dim();
    if d > BACKTRACK_MAX_DIM {
        return Err(Error::DimensionGuard {
            dim: d,
            max: BACKTRACK_MAX_DIM,
        });
    }
    let vectors: Vec<BitVector> = (0..1u64 << d).map(|x| BitVector::from_u64(d, x)).collect();
    let values: Vec<bool> = vectors.iter().map(|v| f.g(v)).collect();
    let mut found = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(d);
    extend_columns(f, &vectors, &values, &mut chosen, &mut found);
    Ok(GroupTable::new(f, found))
}

fn extend_columns(
    f: &QuadraticForm,
    vectors: &[BitVector],
    values: &[bool],
    chosen: &mut Vec<usize>,
    found: &mut Vec<BitMatrix>,
) {
    let d = f.dim();
    let j = chosen.len();
    if j == d {
        let cols: Vec<BitVector> = chosen.iter().map(|&k| vectors[k].clone()).collect();
        let m = BitMatrix::from_columns(d, &cols);
        // Automatic for non-degenerate forms; degenerate ones need the check.
        if m.is_invertible() {
            found.push(m);
        }
        return;
    }
    let want = f.basis_g().get(j);
    for (k, v) in vectors.iter().enumerate() {
        if values[k] != want {
            continue;
        }
        if chosen
            .iter()
            .enumerate()
            .all(|(i, &c)| f.b(&vectors[c], v) == f.gram().get(i, j))
        {
            chosen.push(k);
            extend_columns(f, vectors, values, chosen, found);
            chosen.pop();
        }
    }
}

/// Number of vectors on which `g` vanishes and on which it is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DemocraticCount {
    pub zeros: u64,
    pub ones: u64,
}

/// Counts the values of `g` over all `2^dim` vectors, walking them in Gray
/// code order so each step costs one polarization update.
pub fn democratic_count(f: &QuadraticForm, max_dim: usize) -> Result<DemocraticCount> {
    let d = f.dim();
    let max = max_dim.min(63);
    if d > max {
        return Err(Error::DimensionGuard { dim: d, max });
    }
    let masks: Vec<u64> = (0..d).map(|i| f.gram().row(i).to_u64()).collect();
    let diag: Vec<bool> = (0..d).map(|i| f.basis_g().get(i)).collect();
    // Running value g(v) and the pairing vector G·v.
    let mut value = false;
    let mut pairing = 0u64;
    let mut zeros = 1u64;
    for k in 1u64..(1u64 << d) {
        let i = k.trailing_zeros() as usize;
        value ^= diag[i] ^ (pairing >> i & 1 == 1);
        pairing ^= masks[i];
        zeros += u64::from(!value);
    }
    Ok(DemocraticCount {
        zeros,
        ones: (1u64 << d) - zeros,
    })
}

/// Arf invariant by majority vote: 0 iff `g` vanishes on a strict majority
/// of vectors.
pub fn democratic_arf(f: &QuadraticForm) -> Result<u8> {
    democratic_arf_with_limit(f, DEMOCRATIC_MAX_DIM)
}

pub fn democratic_arf_with_limit(f: &QuadraticForm, max_dim: usize) -> Result<u8> {
    if !f.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    let count = democratic_count(f, max_dim)?;
    Ok(u8::from(count.zeros <= count.ones))
}

/// Whether the table's `ψ` column is a non-trivial homomorphism to `Z/2`
/// on the listed elements. A product missing from the table fails.
pub fn homomorphism_table(t: &GroupTable) -> bool {
    let index: HashMap<&BitMatrix, usize> =
        t.elements.iter().enumerate().map(|(i, m)| (m, i)).collect();
    for (s, &ps) in t.elements.iter().zip(&t.psi_values) {
        for (u, &pu) in t.elements.iter().zip(&t.psi_values) {
            let Ok(p) = s.multiply(u) else { return false };
            match index.get(&p) {
                Some(&k) if t.psi_values[k] == ps ^ pu => {}
                _ => return false,
            }
        }
    }
    t.psi_values.contains(&1)
}

/// Uniform vector with `g = 1`, by rejection. Needs a form that has one.
pub fn random_odd_vector(f: &QuadraticForm, rng: &mut impl Rng) -> BitVector {
    loop {
        let bits: Vec<bool> = (0..f.dim()).map(|_| rng.gen()).collect();
        let v = BitVector::from_bits(&bits);
        if f.g(&v) {
            return v;
        }
    }
}

/// Uniform invertible matrix, by rejection.
pub fn random_invertible(rng: &mut impl Rng, n: usize) -> BitMatrix {
    loop {
        let rows: Vec<BitVector> = (0..n)
            .map(|_| BitVector::from_bits(&(0..n).map(|_| rng.gen()).collect::<Vec<bool>>()))
            .collect();
        let m = BitMatrix::from_rows(n, &rows);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Product of `length` transvections along uniformly chosen `g = 1`
/// vectors, drawn from a ChaCha8 stream seeded with `seed`.
pub fn random_orthogonal(f: &QuadraticForm, seed: u64, length: usize) -> Result<OrthogonalMap> {
    if !f.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    if length > 0 && f.dim() == 0 {
        return Err(Error::Precondition(
            "the zero-dimensional form has no transvections".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = BitMatrix::identity(f.dim());
    for _ in 0..length {
        let a = random_odd_vector(f, &mut rng);
        m = apply_transvection_left(f, &a, &m);
    }
    OrthogonalMap::new(f, m)
}
