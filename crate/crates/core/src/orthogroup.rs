//! The orthogonal group `O(V, g)` of a quadratic form.
//!
//! Covers membership, transvections `T_a(x) = x + B(x, a) a`, fixed spaces,
//! the rank-parity homomorphism `ψ(T) = rank(T − Id) mod 2`, the U-maps of
//! the dimension-4 Arf-0 form, and constructive decomposition of an
//! orthogonal map into transvections.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::quadform::QuadraticForm;

/// Default largest dimension accepted by [`enumerate_group`].
pub const ENUMERATE_MAX_DIM: usize = 8;

/// An invertible matrix certified to preserve a quadratic form.
#[derive(Clone, PartialEq, Eq)]
pub struct OrthogonalMap {
    form: QuadraticForm,
    matrix: BitMatrix,
}

impl OrthogonalMap {
    pub fn new(form: &QuadraticForm, matrix: BitMatrix) -> Result<Self> {
        if !is_orthogonal(form, &matrix)? {
            return Err(Error::NotOrthogonal);
        }
        Ok(OrthogonalMap {
            form: form.clone(),
            matrix,
        })
    }

    pub fn identity(form: &QuadraticForm) -> Self {
        OrthogonalMap {
            form: form.clone(),
            matrix: BitMatrix::identity(form.dim()),
        }
    }

    pub fn form(&self) -> &QuadraticForm {
        &self.form
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> BitMatrix {
        self.matrix
    }

    pub fn apply(&self, v: &BitVector) -> BitVector {
        self.matrix.mul_vec(v)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &OrthogonalMap) -> Result<OrthogonalMap> {
        if self.form != other.form {
            return Err(Error::Precondition("maps preserve different forms".into()));
        }
        Ok(OrthogonalMap {
            form: self.form.clone(),
            matrix: self.matrix.multiply(&other.matrix)?,
        })
    }

    pub fn psi(&self) -> u8 {
        psi_of_matrix(&self.matrix)
    }

    /// Basis of `F(T) = ker(T − Id)`.
    pub fn fixed_space(&self) -> Vec<BitVector> {
        self.matrix.add_identity().kernel_basis()
    }
}

impl fmt::Debug for OrthogonalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrthogonalMap({:?})", self.matrix)
    }
}

/// Whether `m` is invertible and preserves `g` and `B` on all basis
/// vectors and pairs, which by polarization means it preserves `g`
/// everywhere.
pub fn is_orthogonal(form: &QuadraticForm, m: &BitMatrix) -> Result<bool> {
    let n = form.dim();
    if !m.is_square() || m.rows() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: m.rows(),
        });
    }
    let images = m.columns();
    for (i, img) in images.iter().enumerate() {
        if form.g(img) != form.basis_g().get(i) {
            return Ok(false);
        }
        for (j, other) in images.iter().enumerate().skip(i + 1) {
            if form.b(img, other) != form.gram().get(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(m.is_invertible())
}

/// `rank(M − Id) mod 2` for any square matrix.
pub fn psi_of_matrix(m: &BitMatrix) -> u8 {
    (m.add_identity().rank() % 2) as u8
}

/// Matrix of `T_a` without checking `g(a)`: column `i` is `eᵢ + B(eᵢ, a) a`.
pub fn transvection_matrix(form: &QuadraticForm, a: &BitVector) -> BitMatrix {
    let n = form.dim();
    let pairing = form.gram().mul_vec(a);
    let mut m = BitMatrix::identity(n);
    for r in a.ones() {
        for c in pairing.ones() {
            m.set(r, c, !m.get(r, c));
        }
    }
    m
}

/// `T_a` as an orthogonal map; requires `g(a) = 1` or `a = 0`.
pub fn transvection(form: &QuadraticForm, a: &BitVector) -> Result<OrthogonalMap> {
    if a.len() != form.dim() {
        return Err(Error::DimensionMismatch {
            expected: form.dim(),
            found: a.len(),
        });
    }
    if !a.is_zero() && !form.g(a) {
        return Err(Error::InvalidTransvection(a.to_string()));
    }
    Ok(OrthogonalMap {
        form: form.clone(),
        matrix: transvection_matrix(form, a),
    })
}

/// `T_a · m`, i.e. `m` followed by the transvection.
pub(crate) fn apply_transvection_left(
    form: &QuadraticForm,
    a: &BitVector,
    m: &BitMatrix,
) -> BitMatrix {
    // Column j becomes m_j + B(m_j, a) a.
    let pairing = form.gram().mul_vec(a);
    let hit = m.transpose().mul_vec(&pairing);
    let mut out = m.clone();
    for r in a.ones() {
        for c in hit.ones() {
            out.set(r, c, !out.get(r, c));
        }
    }
    out
}

/// Every vector with `g = 1`, in enumeration order. Intended for small
/// dimensions only.
pub fn odd_vectors(form: &QuadraticForm) -> Vec<BitVector> {
    let n = form.dim();
    assert!(n < 32, "odd_vectors enumerates 2^dim vectors");
    (1..1u64 << n)
        .map(|k| BitVector::from_u64(n, k))
        .filter(|v| form.g(v))
        .collect()
}

fn require_split_dim4(form: &QuadraticForm) -> Result<()> {
    if form.dim() != 4 {
        return Err(Error::Precondition(format!(
            "U-maps need dimension 4, got {}",
            form.dim()
        )));
    }
    let arf = form.arf()?;
    if arf != 0 {
        return Err(Error::Precondition("U-maps need Arf invariant 0".into()));
    }
    Ok(())
}

/// The two three-element sets whose union is `{v : g(v) = 1}` for the
/// dimension-4 Arf-0 form. Both lists are sorted; `v1` holds the least
/// `g = 1` vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UMapPartition {
    pub v1: Vec<BitVector>,
    pub v2: Vec<BitVector>,
}

impl UMapPartition {
    pub fn is_valid_for(&self, form: &QuadraticForm) -> bool {
        let mut all: Vec<BitVector> = self.v1.iter().chain(&self.v2).cloned().collect();
        all.sort();
        let mut odd = odd_vectors(form);
        odd.sort();
        let within = |s: &[BitVector]| {
            s.iter()
                .enumerate()
                .all(|(i, x)| s.iter().skip(i + 1).all(|y| form.b(x, y)))
        };
        let across = self
            .v1
            .iter()
            .all(|x| self.v2.iter().all(|y| !form.b(x, y)));
        all == odd && within(&self.v1) && within(&self.v2) && across
    }
}

pub fn umap_partition(form: &QuadraticForm) -> Result<UMapPartition> {
    require_split_dim4(form)?;
    let mut odd = odd_vectors(form);
    odd.sort();
    let first = odd[0].clone();
    let (mut v1, v2): (Vec<BitVector>, Vec<BitVector>) =
        odd[1..].iter().cloned().partition(|v| form.b(&first, v));
    v1.insert(0, first);
    Ok(UMapPartition { v1, v2 })
}

/// The canonical involutive U-map: with `p₁ < p₂` the two least vectors of
/// `V₁` and `q₁ < q₂` those of `V₂`, it exchanges `p₁ ↔ q₁` and `p₂ ↔ q₂`.
pub fn canonical_umap(form: &QuadraticForm) -> Result<OrthogonalMap> {
    let part = umap_partition(form)?;
    let basis = [
        part.v1[0].clone(),
        part.v1[1].clone(),
        part.v2[0].clone(),
        part.v2[1].clone(),
    ];
    let swapped = [
        basis[2].clone(),
        basis[3].clone(),
        basis[0].clone(),
        basis[1].clone(),
    ];
    let p = BitMatrix::from_columns(4, &basis);
    let s = BitMatrix::from_columns(4, &swapped);
    let p_inv = p.inverse().expect("V1 and V2 span complementary planes");
    OrthogonalMap::new(form, s.multiply(&p_inv)?)
}

/// Whether `t` exchanges the two sets of [`umap_partition`].
pub fn is_u_map(t: &OrthogonalMap) -> Result<bool> {
    let part = umap_partition(t.form())?;
    Ok(part.v1.iter().all(|v| part.v2.contains(&t.apply(v))))
}

/// A factorization `T = T_{c_k} ∘ … ∘ T_{c_1} ∘ U₀^{u}`. The word lists the
/// transvection vectors in application order, first-applied first; the
/// U-map, when present, is applied before all of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub u_flag: bool,
    pub word: Vec<BitVector>,
}

impl Decomposition {
    /// Multiplies the factors back together.
    pub fn recompose(&self, form: &QuadraticForm) -> Result<BitMatrix> {
        let mut m = if self.u_flag {
            canonical_umap(form)?.into_matrix()
        } else {
            BitMatrix::identity(form.dim())
        };
        for c in &self.word {
            m = transvection(form, c)?.matrix().multiply(&m)?;
        }
        Ok(m)
    }

    /// `u <0|1>` followed by one bit string per word vector.
    pub fn to_text(&self) -> String {
        let mut s = format!("u {}\n", u8::from(self.u_flag));
        for c in &self.word {
            s.push_str(&c.to_bit_string());
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Decomposition> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (ln, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty decomposition"))?;
        let u_flag = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["u", "0"] => false,
            ["u", "1"] => true,
            _ => return Err(Error::parse(ln + 1, "expected `u <0|1>`")),
        };
        let word = lines
            .map(|(ln, l)| crate::gf2::parse_bits(l, ln + 1))
            .collect::<Result<Vec<_>>>()?;
        Ok(Decomposition { u_flag, word })
    }
}

/// Writes `t` as an optional canonical U-map followed by transvections.
///
/// Restores a symplectic basis with `g(aᵢ) = 1` one vector at a time: first
/// every `aᵢ`, then every `bᵢ`, each step using at most two transvections
/// that fix everything restored so far. A U-map is peeled off first when
/// `t` exchanges the two `g = 1` triples of the dimension-4 Arf-0 form. The
/// word length has the parity of `ψ(t)`.
pub fn decompose(t: &OrthogonalMap) -> Result<Decomposition> {
    let form = t.form();
    let n = form.dim();
    if n == 0 {
        return Ok(Decomposition {
            u_flag: false,
            word: Vec::new(),
        });
    }
    let mut current = t.matrix().clone();
    let mut u_flag = false;
    if n == 4 && form.arf()? == 0 && is_u_map(t)? {
        // T = (T ∘ U₀) ∘ U₀ since U₀ is an involution.
        current = current.multiply(canonical_umap(form)?.matrix())?;
        u_flag = true;
    }
    let basis = form.symplectic_basis_with_odd_a()?;
    let targets = basis.a.iter().chain(&basis.b);
    let mut restoration: Vec<BitVector> = Vec::new();
    let mut fixed: Vec<BitVector> = Vec::new();
    for target in targets {
        let image = current.mul_vec(target);
        if &image != target {
            let path = match form.find_transvection_path_fixing(&image, target, &fixed) {
                Ok(path) => path,
                Err(e) if n <= 4 => {
                    return bfs_fallback(form, current, restoration, u_flag).ok_or(e)
                }
                Err(e) => return Err(e),
            };
            for c in path {
                current = apply_transvection_left(form, &c, &current);
                restoration.push(c);
            }
        }
        fixed.push(target.clone());
    }
    debug_assert_eq!(current, BitMatrix::identity(n));
    restoration.reverse();
    Ok(Decomposition {
        u_flag,
        word: restoration,
    })
}

fn bfs_fallback(
    form: &QuadraticForm,
    residual: BitMatrix,
    mut restoration: Vec<BitVector>,
    u_flag: bool,
) -> Option<Decomposition> {
    let mut word = bfs_word(form, &residual)?;
    restoration.reverse();
    word.extend(restoration);
    Some(Decomposition { u_flag, word })
}

/// Shortest transvection word (application order) equal to `target`, by
/// breadth-first search over the group. Small dimensions only.
pub fn bfs_word(form: &QuadraticForm, target: &BitMatrix) -> Option<Vec<BitVector>> {
    let gens = odd_vectors(form);
    let start = BitMatrix::identity(form.dim());
    let mut parent: HashMap<BitMatrix, Option<(BitMatrix, usize)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    while let Some(m) = queue.pop_front() {
        if &m == target {
            let mut word = Vec::new();
            let mut cur = m;
            while let Some(Some((prev, g))) = parent.get(&cur).cloned() {
                word.push(gens[g].clone());
                cur = prev;
            }
            word.reverse();
            return Some(word);
        }
        for (k, c) in gens.iter().enumerate() {
            let next = apply_transvection_left(form, c, &m);
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((m.clone(), k)));
                queue.push_back(next);
            }
        }
    }
    None
}

/// Closure of all transvections (plus the canonical U-map for the
/// dimension-4 Arf-0 form), sorted in canonical order.
pub fn enumerate_group(form: &QuadraticForm) -> Result<Vec<BitMatrix>> {
    enumerate_group_with_limit(form, ENUMERATE_MAX_DIM)
}

pub fn enumerate_group_with_limit(form: &QuadraticForm, max_dim: usize) -> Result<Vec<BitMatrix>> {
    let with_umap = form.dim() == 4 && form.is_nondegenerate() && form.arf()? == 0;
    transvection_closure_with_limit(form, with_umap, max_dim)
}

/// Closure of the transvections alone, optionally adjoining the canonical
/// U-map.
pub fn transvection_closure(form: &QuadraticForm, with_umap: bool) -> Result<Vec<BitMatrix>> {
    transvection_closure_with_limit(form, with_umap, ENUMERATE_MAX_DIM)
}

fn transvection_closure_with_limit(
    form: &QuadraticForm,
    with_umap: bool,
    max_dim: usize,
) -> Result<Vec<BitMatrix>> {
    if form.dim() > max_dim {
        return Err(Error::DimensionGuard {
            dim: form.dim(),
            max: max_dim,
        });
    }
    let mut gens: Vec<BitMatrix> = odd_vectors(form)
        .iter()
        .map(|c| transvection_matrix(form, c))
        .collect();
    if with_umap {
        gens.push(canonical_umap(form)?.into_matrix());
    }
    let start = BitMatrix::identity(form.dim());
    let mut seen: HashSet<BitMatrix> = HashSet::from([start.clone()]);
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for m in &frontier {
            for g in &gens {
                let p = g.multiply(m)?;
                if seen.insert(p.clone()) {
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<BitMatrix> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn v(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    fn std_form(g: &str) -> QuadraticForm {
        QuadraticForm::standard(v(g)).unwrap()
    }

    fn swap2() -> BitMatrix {
        BitMatrix::from_rows(2, &[v("01"), v("10")])
    }

    #[test]
    fn is_orthogonal_examples() {
        let f = std_form("1100");
        assert!(is_orthogonal(&f, &BitMatrix::identity(4)).unwrap());
        for k in 1..16 {
            let a = BitVector::from_u64(4, k);
            let expected = f.g(&a);
            assert_eq!(
                is_orthogonal(&f, &transvection_matrix(&f, &a)).unwrap(),
                expected,
                "a = {a}"
            );
        }
        assert!(is_orthogonal(&f, &BitMatrix::identity(2)).is_err());
        assert!(!is_orthogonal(&f, &BitMatrix::zeros(4, 4)).unwrap());
    }

    #[test]
    fn transvection_examples() {
        let f = std_form("11");
        assert_eq!(
            transvection(&f, &v("00")).unwrap().into_matrix(),
            BitMatrix::identity(2)
        );
        assert_eq!(transvection(&f, &v("11")).unwrap().into_matrix(), swap2());
        let f0 = std_form("0000");
        assert_eq!(
            transvection(&f0, &v("1000")),
            Err(Error::InvalidTransvection("1000".into()))
        );
        for a in odd_vectors(&std_form("100110")) {
            let t = transvection_matrix(&std_form("100110"), &a);
            assert_eq!(t.multiply(&t).unwrap(), BitMatrix::identity(6));
        }
    }

    #[test]
    fn left_transvection_matches_matrix_product() {
        let f = std_form("011010");
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let odd = odd_vectors(&f);
        let mut m = BitMatrix::identity(6);
        for _ in 0..50 {
            let c = &odd[rng.gen_range(0..odd.len())];
            let expected = transvection_matrix(&f, c).multiply(&m).unwrap();
            m = apply_transvection_left(&f, c, &m);
            assert_eq!(m, expected);
        }
    }

    #[test]
    fn psi_examples() {
        let f = std_form("1001");
        assert_eq!(OrthogonalMap::identity(&f).psi(), 0);
        let odd = odd_vectors(&f);
        for c in &odd {
            assert_eq!(transvection(&f, c).unwrap().psi(), 1);
        }
        let mut t = OrthogonalMap::identity(&f);
        for (k, c) in odd.iter().cycle().take(9).enumerate() {
            t = transvection(&f, c).unwrap().compose(&t).unwrap();
            assert_eq!(t.psi(), ((k + 1) % 2) as u8);
        }
    }

    #[test]
    fn fixed_space_examples() {
        let f = std_form("110000");
        assert_eq!(OrthogonalMap::identity(&f).fixed_space().len(), 6);
        for a in odd_vectors(&f) {
            let fixed = transvection(&f, &a).unwrap().fixed_space();
            assert_eq!(fixed.len(), 5);
            assert!(fixed.iter().all(|x| !f.b(x, &a)));
        }
        let f1 = std_form("11");
        let swap = OrthogonalMap::new(&f1, swap2()).unwrap();
        assert_eq!(swap.fixed_space(), vec![v("11")]);
    }

    #[test]
    fn umap_partition_examples() {
        let f = std_form("0000");
        let part = umap_partition(&f).unwrap();
        assert_eq!(part.v1.len(), 3);
        assert_eq!(part.v2.len(), 3);
        assert!(part.is_valid_for(&f));
        assert!(umap_partition(&std_form("1100")).is_err());
        assert!(umap_partition(&std_form("00")).is_err());
    }

    #[test]
    fn canonical_umap_is_an_involutive_u_map() {
        for bits in 0u64..16 {
            let f = QuadraticForm::standard(BitVector::from_u64(4, bits)).unwrap();
            if f.arf().unwrap() != 0 {
                continue;
            }
            let u = canonical_umap(&f).unwrap();
            assert!(is_u_map(&u).unwrap());
            assert_eq!(u.compose(&u).unwrap().into_matrix(), BitMatrix::identity(4));
            assert_eq!(u.psi(), 0);
            assert!(!is_u_map(&OrthogonalMap::identity(&f)).unwrap());
            for a in odd_vectors(&f) {
                assert!(!is_u_map(&transvection(&f, &a).unwrap()).unwrap());
            }
            assert_eq!(
                decompose(&u).unwrap(),
                Decomposition {
                    u_flag: true,
                    word: vec![]
                }
            );
        }
    }

    #[test]
    fn decompose_examples() {
        let f = std_form("1001");
        assert_eq!(
            decompose(&OrthogonalMap::identity(&f)).unwrap(),
            Decomposition {
                u_flag: false,
                word: vec![]
            }
        );
        let f0 = std_form("00");
        let swap = OrthogonalMap::new(&f0, swap2()).unwrap();
        assert_eq!(
            decompose(&swap).unwrap(),
            Decomposition {
                u_flag: false,
                word: vec![v("11")]
            }
        );
    }

    #[test]
    fn group_orders() {
        assert_eq!(enumerate_group(&std_form("00")).unwrap().len(), 2);
        assert_eq!(enumerate_group(&std_form("11")).unwrap().len(), 6);
        assert_eq!(enumerate_group(&std_form("0000")).unwrap().len(), 72);
        assert_eq!(
            transvection_closure(&std_form("0000"), false)
                .unwrap()
                .len(),
            36
        );
        assert_eq!(enumerate_group(&std_form("1100")).unwrap().len(), 120);
        assert_eq!(
            enumerate_group_with_limit(&std_form("0000"), 2),
            Err(Error::DimensionGuard { dim: 4, max: 2 })
        );
    }

    #[test]
    fn decompose_round_trips_on_small_groups() {
        for g in ["00", "11", "0000", "1100", "0110"] {
            let f = std_form(g);
            for m in enumerate_group(&f).unwrap() {
                let t = OrthogonalMap::new(&f, m.clone()).unwrap();
                let d = decompose(&t).unwrap();
                assert_eq!(d.recompose(&f).unwrap(), m);
                assert_eq!((d.word.len() % 2) as u8, t.psi());
            }
        }
    }

    #[test]
    fn decomposition_text_round_trip() {
        let d = Decomposition {
            u_flag: true,
            word: vec![v("1100"), v("0011")],
        };
        assert_eq!(d.to_text(), "u 1\n1100\n0011\n");
        assert_eq!(Decomposition::from_text(&d.to_text()).unwrap(), d);
        assert!(Decomposition::from_text("u 2\n").unwrap_err().is_parse());
    }

    #[test]
    fn bfs_word_reaches_every_transvection_product() {
        let f = std_form("11");
        for m in enumerate_group(&f).unwrap() {
            let word = bfs_word(&f, &m).unwrap();
            let d = Decomposition {
                u_flag: false,
                word,
            };
            assert_eq!(d.recompose(&f).unwrap(), m);
        }
        assert!(bfs_word(
            &std_form("0000"),
            canonical_umap(&std_form("0000")).unwrap().matrix()
        )
        .is_none());
    }

    #[test]
    fn psi_is_not_additive_on_the_symplectic_group() {
        // Search Sp(4) for a pair violating additivity; the law only holds on O(V, g).
        let gram = crate::quadform::hyperbolic_gram(2);
        let sp: Vec<BitMatrix> = (0u64..1 << 16)
            .map(|bits| {
                let mut m = BitMatrix::zeros(4, 4);
                for k in 0..16 {
                    m.set(k / 4, k % 4, bits >> k & 1 == 1);
                }
                m
            })
            .filter(|m| m.transpose().multiply(&gram).unwrap().multiply(m).unwrap() == gram)
            .collect();
        assert_eq!(sp.len(), 720);
        let witness = sp
            .iter()
            .flat_map(|s| sp.iter().map(move |t| (s, t)))
            .find(|(s, t)| {
                psi_of_matrix(&s.multiply(t).unwrap()) != psi_of_matrix(s) ^ psi_of_matrix(t)
            });
        assert!(witness.is_some());
    }
}
