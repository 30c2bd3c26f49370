//! Surfaces, mapping classes and the quadruple-point invariant.
//!
//! A closed orientable surface of genus `n` is represented through
//! `H₁(F; Z/2) = GF(2)^{2n}` with basis `a₁, b₁, …, aₙ, bₙ` and the standard
//! intersection form. An immersion contributes a quadratic form refining that
//! intersection form, and a mapping class is recorded as its action `h∗` on
//! `H₁` together with its orientation bit `ε`.
//!
//! For a class preserving the form, the mod-2 number of quadruple points of
//! any generic regular homotopy from `i` to `i ∘ h` is
//! `Ψ(h) = rank(h∗ − Id) + (n + 1) ε(h) mod 2`.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{parse_bits, BitMatrix, BitVector};
use crate::orthogroup::{canonical_umap, is_orthogonal, psi_of_matrix, transvection_matrix};
use crate::quadform::{hyperbolic_gram, parse_keyword_bits, QuadraticForm};

/// Quadratic form on `H₁` of a genus-`n` surface over the standard
/// intersection form.
#[derive(Clone, PartialEq, Eq)]
pub struct SurfacePinkallForm {
    genus: usize,
    form: QuadraticForm,
}

impl SurfacePinkallForm {
    /// `basis_g` lists `g(a₁), g(b₁), …, g(aₙ), g(bₙ)`.
    pub fn new(basis_g: BitVector) -> Result<Self> {
        let form = QuadraticForm::standard(basis_g)?;
        Ok(SurfacePinkallForm {
            genus: form.dim() / 2,
            form,
        })
    }

    /// Wraps a form after checking its Gram matrix is the standard
    /// intersection form.
    pub fn from_form(form: QuadraticForm) -> Result<Self> {
        if !form.dim().is_multiple_of(2) || form.gram() != &hyperbolic_gram(form.dim() / 2) {
            return Err(Error::Precondition(
                "gram is not the standard intersection form".into(),
            ));
        }
        Ok(SurfacePinkallForm {
            genus: form.dim() / 2,
            form,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn form(&self) -> &QuadraticForm {
        &self.form
    }

    pub fn arf(&self) -> u8 {
        self.form
            .arf()
            .expect("intersection forms are non-degenerate")
    }

    /// Form on the connected sum: genus adds, the basis values concatenate.
    pub fn connected_sum(&self, other: &SurfacePinkallForm) -> SurfacePinkallForm {
        SurfacePinkallForm {
            genus: self.genus + other.genus,
            form: self.form.direct_sum(&other.form),
        }
    }

    /// `genus <n>` then `g <2n bits>`.
    pub fn to_text(&self) -> String {
        let g = format!("g {}", self.form.basis_g());
        format!("genus {}\n{}\n", self.genus, g.trim_end())
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (ln, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty surface text"))?;
        let genus = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["genus", n] => n
                .parse::<usize>()
                .map_err(|_| Error::parse(ln + 1, "invalid genus"))?,
            _ => return Err(Error::parse(ln + 1, "expected `genus <n>`")),
        };
        let (ln, gline) = lines
            .next()
            .ok_or_else(|| Error::parse(ln + 2, "missing `g` line"))?;
        let bits = parse_keyword_bits(gline, "g", ln + 1)?;
        if bits.len() != 2 * genus {
            return Err(Error::parse(
                ln + 1,
                format!("expected {} g bits, found {}", 2 * genus, bits.len()),
            ));
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::parse(ln + 1, "trailing content after surface"));
        }
        Self::new(bits)
    }
}

impl fmt::Debug for SurfacePinkallForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SurfacePinkallForm(genus={}, g={})",
            self.genus,
            self.form.basis_g()
        )
    }
}

/// A mapping class seen through its action on `H₁` and its orientation bit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MappingClass {
    action: BitMatrix,
    epsilon: bool,
}

impl MappingClass {
    /// The action must preserve the intersection form.
    pub fn new(action: BitMatrix, epsilon: bool) -> Result<Self> {
        if !action.is_square() || !action.rows().is_multiple_of(2) {
            return Err(Error::Precondition(format!(
                "action must be square of even size, got {}x{}",
                action.rows(),
                action.cols()
            )));
        }
        let gram = hyperbolic_gram(action.rows() / 2);
        if action.transpose().multiply(&gram)?.multiply(&action)? != gram {
            return Err(Error::Precondition(
                "action does not preserve the intersection form".into(),
            ));
        }
        Ok(MappingClass { action, epsilon })
    }

    pub fn identity(genus: usize) -> Self {
        MappingClass {
            action: BitMatrix::identity(2 * genus),
            epsilon: false,
        }
    }

    /// Orientation-reversing class acting trivially on homology.
    pub fn flip(genus: usize) -> Self {
        MappingClass {
            action: BitMatrix::identity(2 * genus),
            epsilon: true,
        }
    }

    pub fn genus(&self) -> usize {
        self.action.rows() / 2
    }

    pub fn action(&self) -> &BitMatrix {
        &self.action
    }

    pub fn epsilon(&self) -> bool {
        self.epsilon
    }

    /// `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &MappingClass) -> Result<MappingClass> {
        Ok(MappingClass {
            action: self.action.multiply(&other.action)?,
            epsilon: self.epsilon ^ other.epsilon,
        })
    }
}

/// One generator in a word over the good maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Token {
    /// Dehn twist along a curve with the given homology class.
    Twist(BitVector),
    /// Square of a Dehn twist.
    Square(BitVector),
    /// Orientation-reversing map inducing the identity on `H₁`.
    Flip,
    /// The canonical U-map (genus 2, Arf 0 only).
    UMap,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Twist(c) => write!(f, "twist {c}"),
            Token::Square(c) => write!(f, "square {c}"),
            Token::Flip => f.write_str("flip"),
            Token::UMap => f.write_str("umap"),
        }
    }
}

/// Tokens in application order: the first token acts first.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GeneratorWord(pub Vec<Token>);

impl GeneratorWord {
    pub fn to_text(&self) -> String {
        self.0.iter().map(|t| format!("{t}\n")).collect()
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut tokens = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let token = match fields.as_slice() {
                [] => continue,
                ["twist", bits] => Token::Twist(parse_bits(bits, ln + 1)?),
                ["square", bits] => Token::Square(parse_bits(bits, ln + 1)?),
                ["flip"] => Token::Flip,
                ["umap"] => Token::UMap,
                _ => {
                    return Err(Error::parse(
                        ln + 1,
                        format!("unrecognized token line {line:?}"),
                    ))
                }
            };
            tokens.push(token);
        }
        Ok(GeneratorWord(tokens))
    }
}

/// Classification of good maps by kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GoodMapType {
    /// Square of a Dehn twist.
    SquaredTwist = 1,
    /// Twist along a curve with `g = 1`.
    OddTwist = 2,
    /// Twist along a null-homologous curve.
    BoundingTwist = 3,
}

fn check_class_len(s: &SurfacePinkallForm, c: &BitVector) -> Result<()> {
    if c.len() != 2 * s.genus {
        return Err(Error::DimensionMismatch {
            expected: 2 * s.genus,
            found: c.len(),
        });
    }
    Ok(())
}

/// Action of a Dehn twist along a curve of class `c`. Both twist directions
/// induce the same map over `Z/2`.
pub fn dehn_twist_action(s: &SurfacePinkallForm, c: &BitVector) -> Result<MappingClass> {
    check_class_len(s, c)?;
    Ok(MappingClass {
        action: transvection_matrix(&s.form, c),
        epsilon: false,
    })
}

/// `None` for a twist along `c ≠ 0` with `g(c) = 0`, which leaves the
/// orthogonal mapping class group.
pub fn good_map_type(s: &SurfacePinkallForm, token: &Token) -> Result<Option<GoodMapType>> {
    match token {
        Token::Square(c) => {
            check_class_len(s, c)?;
            Ok(Some(GoodMapType::SquaredTwist))
        }
        Token::Twist(c) => {
            check_class_len(s, c)?;
            Ok(if c.is_zero() {
                Some(GoodMapType::BoundingTwist)
            } else if s.form.g(c) {
                Some(GoodMapType::OddTwist)
            } else {
                None
            })
        }
        other => Err(Error::InvalidToken(format!(
            "`{other}` is not a twist or squared twist"
        ))),
    }
}

pub fn token_class(s: &SurfacePinkallForm, token: &Token) -> Result<MappingClass> {
    match token {
        Token::Twist(c) => dehn_twist_action(s, c),
        Token::Square(c) => {
            check_class_len(s, c)?;
            Ok(MappingClass::identity(s.genus))
        }
        Token::Flip => Ok(MappingClass::flip(s.genus)),
        Token::UMap => {
            if s.genus != 2 || s.arf() != 0 {
                return Err(Error::InvalidToken(
                    "umap needs genus 2 and Arf invariant 0".into(),
                ));
            }
            Ok(MappingClass {
                action: canonical_umap(&s.form)?.into_matrix(),
                epsilon: false,
            })
        }
    }
}

/// Composite of the tokens, first token acting first.
pub fn evaluate_word(s: &SurfacePinkallForm, word: &GeneratorWord) -> Result<MappingClass> {
    word.0
        .iter()
        .try_fold(MappingClass::identity(s.genus), |acc, t| {
            token_class(s, t)?.compose(&acc)
        })
}

fn check_class_genus(s: &SurfacePinkallForm, h: &MappingClass) -> Result<()> {
    if h.genus() != s.genus {
        return Err(Error::DimensionMismatch {
            expected: 2 * s.genus,
            found: h.action.rows(),
        });
    }
    Ok(())
}

/// Whether `h∗` preserves the form, i.e. `i ∘ h` is regularly homotopic
/// to `i`.
pub fn in_orthogonal_mcg(s: &SurfacePinkallForm, h: &MappingClass) -> Result<bool> {
    check_class_genus(s, h)?;
    is_orthogonal(&s.form, &h.action)
}

/// `Ψ(h) = rank(h∗ − Id) + (n + 1) ε(h) mod 2`.
pub fn mapping_class_psi(s: &SurfacePinkallForm, h: &MappingClass) -> Result<u8> {
    if !in_orthogonal_mcg(s, h)? {
        return Err(Error::NotOrthogonal);
    }
    let orientation = u8::from(h.epsilon) * ((s.genus as u8 + 1) % 2);
    Ok(psi_of_matrix(&h.action) ^ orientation)
}

/// Mod-2 quadruple-point count of any generic regular homotopy from `i`
/// to `i ∘ h`; defined only when the two immersions are regularly
/// homotopic.
pub fn quadruple_point_invariant(s: &SurfacePinkallForm, h: &MappingClass) -> Result<u8> {
    match mapping_class_psi(s, h) {
        Err(Error::NotOrthogonal) => Err(Error::NotRegularlyHomotopic),
        other => other,
    }
}

fn check_same_genus(f1: &SurfacePinkallForm, f2: &SurfacePinkallForm) -> Result<()> {
    if f1.genus != f2.genus {
        return Err(Error::GenusMismatch(f1.genus, f2.genus));
    }
    Ok(())
}

/// Immersions are regularly homotopic iff their forms coincide.
pub fn regularly_homotopic(f1: &SurfacePinkallForm, f2: &SurfacePinkallForm) -> Result<bool> {
    check_same_genus(f1, f2)?;
    Ok(f1.form.basis_g() == f2.form.basis_g())
}

/// `i ∼ i' ∘ h` for some diffeomorphism `h` iff the Arf invariants agree.
pub fn equivalent_up_to_diffeomorphism(
    f1: &SurfacePinkallForm,
    f2: &SurfacePinkallForm,
) -> Result<bool> {
    check_same_genus(f1, f2)?;
    Ok(f1.arf() == f2.arf())
}

/// Forms induced by embeddings have Arf invariant 0.
pub fn embedding_realizable(f: &SurfacePinkallForm) -> bool {
    f.arf() == 0
}

/// A generator of the genus-1 groups, with the integer matrix it comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedGenerator {
    pub name: &'static str,
    pub integer: [[i64; 2]; 2],
    pub class: MappingClass,
}

impl NamedGenerator {
    fn from_integer(name: &'static str, integer: [[i64; 2]; 2]) -> Self {
        let mut action = BitMatrix::zeros(2, 2);
        for (i, row) in integer.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                action.set(i, j, x.rem_euclid(2) == 1);
            }
        }
        let det = integer[0][0] * integer[1][1] - integer[0][1] * integer[1][0];
        debug_assert!(det == 1 || det == -1);
        let class = MappingClass::new(action, det == -1).expect("GL2(Z) reduces into Sp2(Z/2)");
        NamedGenerator {
            name,
            integer,
            class,
        }
    }
}

/// Generators of the form-preserving mapping classes of the torus in the
/// basis `m, l`: `A₁…A₄` for Arf 0 and the normal generators `B₁, B₂` for
/// Arf 1. Orientation-reversing exactly when the integer determinant is −1.
pub fn genus1_generators(arf: u8) -> Vec<NamedGenerator> {
    if arf == 0 {
        vec![
            NamedGenerator::from_integer("A1", [[1, 2], [0, 1]]),
            NamedGenerator::from_integer("A2", [[1, 0], [2, 1]]),
            NamedGenerator::from_integer("A3", [[-1, 0], [0, 1]]),
            NamedGenerator::from_integer("A4", [[0, 1], [1, 0]]),
        ]
    } else {
        vec![
            NamedGenerator::from_integer("B1", [[-1, 2], [0, 1]]),
            NamedGenerator::from_integer("B2", [[0, 1], [1, 0]]),
        ]
    }
}

/// Genus-1 surface form with the given Arf invariant: `g(m) = g(l) = arf`.
pub fn torus_form(arf: u8) -> SurfacePinkallForm {
    let bits = if arf == 0 { "00" } else { "11" };
    SurfacePinkallForm::new(bits.parse().expect("static bits")).expect("genus-1 form")
}

/// Class on a connected sum acting blockwise; the two orientation bits must
/// agree.
pub fn connected_sum(h1: &MappingClass, h2: &MappingClass) -> Result<MappingClass> {
    if h1.epsilon != h2.epsilon {
        return Err(Error::EpsilonMismatch);
    }
    Ok(MappingClass {
        action: h1.action.block_diag(&h2.action),
        epsilon: h1.epsilon,
    })
}
