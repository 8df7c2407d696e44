//! The shears `a_k = [[1,k],[0,1]]`, `b_k = [[1,0],[k,1]]` acting on origami
//! surfaces, free-group words over them, and the affine
//! `SL_2(Z) ⋉ Z^2` generators acting on tori.
//!
//! On a surface, `a_k` acts inside the horizontal arrangement of the square
//! holding the point: `s = x + k y` is split as `j + frac`, and the point
//! moves `j` squares to the right. `b_k` does the same vertically.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::surface::{split_floor, Surface, SurfacePoint, TorusPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    AInv,
    B,
    BInv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::AInv, Letter::B, Letter::BInv];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::B => Letter::BInv,
            Letter::BInv => Letter::B,
        }
    }

    /// `a`, `A`, `b`, `B` (capital = inverse).
    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::AInv => 'A',
            Letter::B => 'b',
            Letter::BInv => 'B',
        }
    }

    pub fn from_char(c: char) -> Result<Letter> {
        match c {
            'a' => Ok(Letter::A),
            'A' => Ok(Letter::AInv),
            'b' => Ok(Letter::B),
            'B' => Ok(Letter::BInv),
            _ => Err(Error::Parse(format!("letter `{c}` is not one of a, A, b, B"))),
        }
    }

    /// Integer matrix of the shear with parameter `k`.
    pub fn matrix(self, k: i64) -> [[i64; 2]; 2] {
        match self {
            Letter::A => [[1, k], [0, 1]],
            Letter::AInv => [[1, -k], [0, 1]],
            Letter::B => [[1, 0], [k, 1]],
            Letter::BInv => [[1, 0], [-k, 1]],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub letter: Letter,
    pub k: u64,
}

impl Generator {
    pub fn new(letter: Letter, k: u64) -> Self {
        Generator { letter, k }
    }
}

/// Check that `k` is usable on `surface`.
pub fn check_k(surface: &Surface, k: u64) -> Result<()> {
    let required = surface.shear_modulus();
    if k == 0 || !k.is_multiple_of(required) {
        return Err(Error::KNotAdmissible { k, required });
    }
    Ok(())
}

/// Image of a canonical point under one generator.
pub fn apply_generator(surface: &Surface, gen: Generator, p: &SurfacePoint) -> Result<SurfacePoint> {
    check_k(surface, gen.k)?;
    Ok(apply_unchecked(surface, gen.letter, gen.k, p))
}

pub(crate) fn apply_unchecked(surface: &Surface, letter: Letter, k: u64, p: &SurfacePoint) -> SurfacePoint {
    let k = BigRational::from_integer(BigInt::from(k));
    match letter {
        Letter::A | Letter::AInv => {
            let shift = &k * &p.y;
            let s = if letter == Letter::A { &p.x + shift } else { &p.x - shift };
            let (j, frac) = split_floor(&s);
            let sq = surface.step_horizontal(p.square, &j);
            surface.point(sq, frac, p.y.clone())
        }
        Letter::B | Letter::BInv => {
            let shift = &k * &p.x;
            let s = if letter == Letter::B { &p.y + shift } else { &p.y - shift };
            let (j, frac) = split_floor(&s);
            let sq = surface.step_vertical(p.square, &j);
            surface.point(sq, p.x.clone(), frac)
        }
    }
}

/// The same shear acting on the torus.
pub fn apply_torus(letter: Letter, k: u64, q: &TorusPoint) -> TorusPoint {
    let [[a, b], [c, d]] = letter.matrix(k as i64);
    let big = |v: i64| BigRational::from_integer(BigInt::from(v));
    TorusPoint::new(big(a) * &q.x + big(b) * &q.y, big(c) * &q.x + big(d) * &q.y)
}

/// `rho(g·p) == g·rho(p)`.
pub fn equivariance_check(surface: &Surface, gen: Generator, p: &SurfacePoint) -> Result<bool> {
    let moved = apply_generator(surface, gen, p)?;
    Ok(surface.covering_map(&moved) == apply_torus(gen.letter, gen.k, &surface.covering_map(p)))
}

/// A freely reduced word in `a_k, b_k` and their inverses. Letters are read
/// right to left when acting: `ab` means "apply `b`, then `a`".
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord {
    letters: Vec<Letter>,
    k: u64,
}

impl GroupWord {
    pub fn new(letters: impl IntoIterator<Item = Letter>, k: u64) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        GroupWord { letters: out, k }
    }

    pub fn identity(k: u64) -> Self {
        GroupWord { letters: Vec::new(), k }
    }

    pub fn parse(s: &str, k: u64) -> Result<Self> {
        let letters = s.chars().filter(|c| !c.is_whitespace()).map(Letter::from_char).collect::<Result<Vec<_>>>()?;
        Ok(GroupWord::new(letters, k))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// Word length after reduction.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        GroupWord { letters: self.letters.iter().rev().map(|l| l.inverse()).collect(), k: self.k }
    }

    /// `self · other` (apply `other` first).
    pub fn concat(&self, other: &GroupWord) -> Self {
        GroupWord::new(self.letters.iter().chain(other.letters.iter()).copied(), self.k)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

pub fn apply_word(surface: &Surface, word: &GroupWord, p: &SurfacePoint) -> Result<SurfacePoint> {
    check_k(surface, word.k)?;
    Ok(word.letters.iter().rev().fold(p.clone(), |q, &l| apply_unchecked(surface, l, word.k, &q)))
}

/// All reduced words of length at most `radius`, by length and then
/// lexicographically in the order `a, A, b, B`.
pub fn f2_ball(radius: usize, k: u64) -> Vec<GroupWord> {
    let mut out = vec![GroupWord::identity(k)];
    let mut frontier = vec![Vec::<Letter>::new()];
    for _ in 0..radius {
        let mut next = Vec::with_capacity(frontier.len() * 3);
        for w in &frontier {
            for l in Letter::ALL {
                if w.first() == Some(&l.inverse()) {
                    continue;
                }
                let mut v = Vec::with_capacity(w.len() + 1);
                v.push(l);
                v.extend_from_slice(w);
                next.push(v);
            }
        }
        next.sort();
        out.extend(next.iter().map(|v| GroupWord { letters: v.clone(), k }));
        frontier = next;
    }
    out
}

/// Orbit of `p` under the four generators, explored breadth first up to
/// `max_len` letters (or to saturation when `None`).
pub fn orbit(surface: &Surface, k: u64, p: &SurfacePoint, max_len: Option<usize>) -> Result<BTreeSet<SurfacePoint>> {
    check_k(surface, k)?;
    let mut seen = BTreeSet::new();
    seen.insert(p.clone());
    let mut queue = VecDeque::from([(p.clone(), 0usize)]);
    while let Some((q, d)) = queue.pop_front() {
        if max_len.is_some_and(|m| d >= m) {
            continue;
        }
        for l in Letter::ALL {
            let r = apply_unchecked(surface, l, k, &q);
            if seen.insert(r.clone()) {
                queue.push_back((r, d + 1));
            }
        }
    }
    Ok(seen)
}

/// Grid points of denominator `n` fixed by `gen`.
pub fn fixed_points(surface: &Surface, gen: Generator, n: u64) -> Result<Vec<SurfacePoint>> {
    check_k(surface, gen.k)?;
    Ok(surface
        .grid_points(n)
        .into_iter()
        .filter(|p| apply_unchecked(surface, gen.letter, gen.k, p) == *p)
        .collect())
}

/// Element `(matrix, translation)` of `SL_2(Z) ⋉ Z^2` (or `GL_2`), acting by
/// `v ↦ matrix·v + translation`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AffineGen {
    pub matrix: [[i64; 2]; 2],
    pub translation: [i64; 2],
}

impl AffineGen {
    pub const IDENTITY: AffineGen = AffineGen { matrix: [[1, 0], [0, 1]], translation: [0, 0] };
    pub const T1: AffineGen = AffineGen { matrix: [[1, 0], [0, 1]], translation: [1, 0] };
    pub const T2: AffineGen = AffineGen { matrix: [[1, 0], [0, 1]], translation: [0, 1] };
    pub const T3: AffineGen = AffineGen { matrix: [[1, 1], [0, 1]], translation: [0, 0] };
    pub const T4: AffineGen = AffineGen { matrix: [[0, -1], [1, 0]], translation: [0, 0] };

    pub fn det(&self) -> i64 {
        let [[a, b], [c, d]] = self.matrix;
        a * d - b * c
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineGen) -> AffineGen {
        let m = mat_mul(self.matrix, other.matrix);
        let t = mat_vec(self.matrix, other.translation);
        AffineGen { matrix: m, translation: [t[0] + self.translation[0], t[1] + self.translation[1]] }
    }

    pub fn inverse(&self) -> AffineGen {
        let det = self.det();
        assert!(det == 1 || det == -1, "affine generator must be unimodular");
        let [[a, b], [c, d]] = self.matrix;
        let inv = [[d * det, -b * det], [-c * det, a * det]];
        let t = mat_vec(inv, self.translation);
        AffineGen { matrix: inv, translation: [-t[0], -t[1]] }
    }

    /// Action on the discrete torus `Z_n × Z_n`.
    pub fn apply_mod(&self, p: (u64, u64), n: u64) -> (u64, u64) {
        let n_i = n as i64;
        let v = mat_vec(self.matrix, [p.0 as i64, p.1 as i64]);
        (
            (v[0] + self.translation[0]).rem_euclid(n_i) as u64,
            (v[1] + self.translation[1]).rem_euclid(n_i) as u64,
        )
    }

    /// Action on the rational torus `[0,1)^2`; the translation part is
    /// integral and so vanishes modulo 1.
    pub fn apply_torus(&self, q: &TorusPoint) -> TorusPoint {
        let big = |v: i64| BigRational::from_integer(BigInt::from(v));
        let [[a, b], [c, d]] = self.matrix;
        TorusPoint::new(
            big(a) * &q.x + big(b) * &q.y + big(self.translation[0]),
            big(c) * &q.x + big(d) * &q.y + big(self.translation[1]),
        )
    }
}

fn mat_mul(a: [[i64; 2]; 2], b: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]
}

fn mat_vec(a: [[i64; 2]; 2], v: [i64; 2]) -> [i64; 2] {
    [a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]]
}

/// Generic torus action entry point: discrete `Z_n^2` coordinates.
pub fn torus_affine_apply(gen: &AffineGen, p: (u64, u64), n: u64) -> (u64, u64) {
    gen.apply_mod(p, n)
}
