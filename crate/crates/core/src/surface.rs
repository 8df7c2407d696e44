//! Origami (square-tiled) surfaces.
//!
//! A surface is glued from `m` unit squares. The left side of square `i` is
//! glued to the right side of square `sigma(i)`, and the top side of square
//! `i` to the bottom side of square `tau(i)`. Walking right out of square
//! `i` therefore lands in `sigma^-1(i)` and walking up lands in `tau(i)`.
//!
//! Points are stored with exact rational coordinates in the half-open square
//! `[0,1)^2`. The only ambiguity left by that choice is at the square corners,
//! which all project to the origin of the torus; those are canonicalized to
//! the smallest square index of their corner class.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational `num/den`.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Fractional part in `[0,1)` together with the floor.
pub fn split_floor(s: &BigRational) -> (BigInt, BigRational) {
    let fl = s.floor();
    let frac = s - &fl;
    (fl.to_integer(), frac)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &i in &images {
            if i >= m || seen[i] {
                return Err(Error::InvalidPermutation(m));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(m: usize) -> Self {
        Permutation { images: (0..m).collect() }
    }

    /// Build from disjoint cycles, e.g. `&[&[0, 1], &[2, 3]]`.
    pub fn from_cycles(m: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..m).collect();
        let mut touched = vec![false; m];
        for cycle in cycles {
            for (pos, &a) in cycle.iter().enumerate() {
                if a >= m || touched[a] {
                    return Err(Error::InvalidPermutation(m));
                }
                touched[a] = true;
                images[a] = cycle[(pos + 1) % cycle.len()];
            }
        }
        Permutation::new(images)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    /// `self^e` for any integer exponent.
    pub fn pow(&self, e: i64) -> Permutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let ord = self.order() as i64;
        let e = (e.unsigned_abs() % ord as u64) as usize;
        let mut out = Permutation::identity(self.len());
        for _ in 0..e {
            out = base.compose(&out);
        }
        out
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if seen[s] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i);
                i = self.images[i];
            }
            out.push(cyc);
        }
        out
    }

    /// Order in the symmetric group: lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrigamiDatum {
    pub m: usize,
    pub sigma: Permutation,
    pub tau: Permutation,
}

impl OrigamiDatum {
    pub fn torus() -> Self {
        OrigamiDatum { m: 1, sigma: Permutation::identity(1), tau: Permutation::identity(1) }
    }
}

/// The staircase origami of genus `g`: `2g-1` squares,
/// `sigma = (0 1)(2 3)...(2g-4 2g-3)` and `tau = (1 2)(3 4)...(2g-3 2g-2)`.
pub fn staircase(g: usize) -> Result<OrigamiDatum> {
    if g < 1 {
        return Err(Error::InvalidGenus(g));
    }
    let m = 2 * g - 1;
    let sigma_cycles: Vec<[usize; 2]> = (0..g - 1).map(|i| [2 * i, 2 * i + 1]).collect();
    let tau_cycles: Vec<[usize; 2]> = (0..g - 1).map(|i| [2 * i + 1, 2 * i + 2]).collect();
    let s: Vec<&[usize]> = sigma_cycles.iter().map(|c| &c[..]).collect();
    let t: Vec<&[usize]> = tau_cycles.iter().map(|c| &c[..]).collect();
    Ok(OrigamiDatum {
        m,
        sigma: Permutation::from_cycles(m, &s)?,
        tau: Permutation::from_cycles(m, &t)?,
    })
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }
    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

const BL: usize = 0;
const BR: usize = 1;
const TL: usize = 2;
const TR: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surface {
    datum: OrigamiDatum,
    right_step: Permutation,
    up_step: Permutation,
    left_step: Permutation,
    down_step: Permutation,
    corner_classes: Vec<Vec<usize>>,
    corner_rep: Vec<usize>,
    genus: usize,
}

/// Validate an origami datum and derive its gluing data.
pub fn validate_datum(m: usize, sigma: Vec<usize>, tau: Vec<usize>) -> Result<Surface> {
    if sigma.len() != m {
        return Err(Error::InvalidPermutation(m));
    }
    if tau.len() != m {
        return Err(Error::InvalidPermutation(m));
    }
    let datum = OrigamiDatum { m, sigma: Permutation::new(sigma)?, tau: Permutation::new(tau)? };
    Surface::new(datum)
}

impl Surface {
    pub fn new(datum: OrigamiDatum) -> Result<Surface> {
        let m = datum.m;
        if m == 0 || datum.sigma.len() != m || datum.tau.len() != m {
            return Err(Error::InvalidPermutation(m));
        }
        let mut orbits = UnionFind::new(m);
        for i in 0..m {
            orbits.union(i, datum.sigma.apply(i));
            orbits.union(i, datum.tau.apply(i));
        }
        let n_orbits = (0..m).filter(|&i| orbits.find(i) == i).count();
        if n_orbits != 1 {
            return Err(Error::NotTransitive { m, orbits: n_orbits });
        }

        let mut corners = UnionFind::new(4 * m);
        for i in 0..m {
            let s = datum.sigma.apply(i);
            let t = datum.tau.apply(i);
            corners.union(4 * i + BL, 4 * s + BR);
            corners.union(4 * i + TL, 4 * s + TR);
            corners.union(4 * i + TL, 4 * t + BL);
            corners.union(4 * i + TR, 4 * t + BR);
        }
        let mut corner_rep = vec![usize::MAX; m];
        let mut corner_classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..m {
            if corner_rep[i] != usize::MAX {
                continue;
            }
            let root = corners.find(4 * i + BL);
            let class: Vec<usize> = (i..m).filter(|&j| corners.find(4 * j + BL) == root).collect();
            for &j in &class {
                corner_rep[j] = i;
            }
            corner_classes.push(class);
        }
        let c = corner_classes.len();
        debug_assert!((2 + m - c).is_multiple_of(2));
        let genus = (2 + m - c) / 2;

        let right_step = datum.sigma.inverse();
        let up_step = datum.tau.clone();
        let left_step = datum.sigma.clone();
        let down_step = datum.tau.inverse();
        Ok(Surface { datum, right_step, up_step, left_step, down_step, corner_classes, corner_rep, genus })
    }

    pub fn torus() -> Surface {
        Surface::new(OrigamiDatum::torus()).expect("torus datum is valid")
    }

    pub fn datum(&self) -> &OrigamiDatum {
        &self.datum
    }

    pub fn m(&self) -> usize {
        self.datum.m
    }

    pub fn right_step(&self) -> &Permutation {
        &self.right_step
    }

    pub fn up_step(&self) -> &Permutation {
        &self.up_step
    }

    pub fn corner_classes(&self) -> &[Vec<usize>] {
        &self.corner_classes
    }

    /// Canonical (smallest) square of the corner class containing the
    /// bottom-left corner of `square`.
    pub fn corner_rep(&self, square: usize) -> usize {
        self.corner_rep[square]
    }

    /// Genus via the Euler characteristic `V - E + F` with `V` the number of
    /// corner classes, `E = 2m` and `F = m`.
    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Largest number of squares meeting at one corner point.
    pub fn max_corner_class(&self) -> usize {
        self.corner_classes.iter().map(Vec::len).max().unwrap_or(1)
    }

    /// `lcm(ord sigma, ord tau)`: the shear parameter must be a multiple of
    /// this for the lifted action to be well defined (except on the torus).
    pub fn shear_modulus(&self) -> u64 {
        if self.m() == 1 {
            1
        } else {
            num_integer::lcm(self.datum.sigma.order(), self.datum.tau.order())
        }
    }

    /// Square reached after `j` steps to the right (negative = left).
    pub fn step_horizontal(&self, square: usize, j: &BigInt) -> usize {
        self.step(square, j, &self.right_step, &self.left_step)
    }

    /// Square reached after `j` steps up (negative = down).
    pub fn step_vertical(&self, square: usize, j: &BigInt) -> usize {
        self.step(square, j, &self.up_step, &self.down_step)
    }

    fn step(&self, square: usize, j: &BigInt, fwd: &Permutation, back: &Permutation) -> usize {
        if j.is_zero() {
            return square;
        }
        let (perm, steps) = if j.is_negative() { (back, -j) } else { (fwd, j.clone()) };
        let ord = BigInt::from(perm.order());
        let steps = (steps % ord).to_u64().expect("reduced modulo a small order");
        let mut s = square;
        for _ in 0..steps {
            s = perm.apply(s);
        }
        s
    }

    /// Canonical point for `square` and coordinates already in `[0,1)`.
    pub fn point(&self, square: usize, x: BigRational, y: BigRational) -> SurfacePoint {
        debug_assert!(!x.is_negative() && x < BigRational::one());
        debug_assert!(!y.is_negative() && y < BigRational::one());
        let square = if x.is_zero() && y.is_zero() { self.corner_rep[square] } else { square };
        SurfacePoint { square, x, y }
    }

    /// Canonical point from arbitrary rational coordinates inside the
    /// horizontal/vertical arrangement of `square` (unrolling first
    /// horizontally, then vertically).
    pub fn point_unrolled(&self, square: usize, x: &BigRational, y: &BigRational) -> SurfacePoint {
        let (jx, fx) = split_floor(x);
        let s = self.step_horizontal(square, &jx);
        let (jy, fy) = split_floor(y);
        let s = self.step_vertical(s, &jy);
        self.point(s, fx, fy)
    }

    /// The corner point (unique preimage of the torus origin when there is
    /// a single corner class).
    pub fn corner(&self, square: usize) -> SurfacePoint {
        self.point(square, BigRational::zero(), BigRational::zero())
    }

    /// Branched covering to the torus: forget the square.
    pub fn covering_map(&self, p: &SurfacePoint) -> TorusPoint {
        TorusPoint { x: p.x.clone(), y: p.y.clone() }
    }

    /// All canonical preimages of a torus point.
    pub fn fibre(&self, q: &TorusPoint) -> Vec<SurfacePoint> {
        if q.x.is_zero() && q.y.is_zero() {
            self.corner_classes.iter().map(|c| self.corner(c[0])).collect()
        } else {
            (0..self.m()).map(|i| self.point(i, q.x.clone(), q.y.clone())).collect()
        }
    }

    /// Number of canonical points on the grid of denominator `n`.
    pub fn grid_size(&self, n: u64) -> usize {
        let m = self.m();
        m * (n * n) as usize - (m - self.corner_classes.len())
    }

    /// All canonical points `(i, p/n, q/n)`, ordered by square, then `x`,
    /// then `y`.
    pub fn grid_points(&self, n: u64) -> Vec<SurfacePoint> {
        let mut out = Vec::with_capacity(self.grid_size(n));
        let n_i = n as i64;
        for i in 0..self.m() {
            for p in 0..n_i {
                for q in 0..n_i {
                    if p == 0 && q == 0 && self.corner_rep[i] != i {
                        continue;
                    }
                    out.push(SurfacePoint { square: i, x: rat(p, n_i), y: rat(q, n_i) });
                }
            }
        }
        out
    }

    /// Integer grid coordinates `(square, x*n, y*n)` of a grid point.
    pub fn grid_coords(&self, p: &SurfacePoint, n: u64) -> Result<(usize, u64, u64)> {
        let nn = BigRational::from_integer(BigInt::from(n));
        let xs = &p.x * &nn;
        let ys = &p.y * &nn;
        if !xs.is_integer() || !ys.is_integer() || p.square >= self.m() {
            return Err(Error::NotAGridPoint(n));
        }
        Ok((
            p.square,
            xs.to_integer().to_u64().ok_or(Error::NotAGridPoint(n))?,
            ys.to_integer().to_u64().ok_or(Error::NotAGridPoint(n))?,
        ))
    }

    /// Grid neighbours at distance `1/n` in the flat metric, distinct and
    /// sorted, excluding `p` itself. Away from the corner there are at most
    /// four. At a corner point where `c` squares meet (cone angle `2πc`)
    /// there are up to `4c`, one along each of the emanating edges, which
    /// keeps the relation symmetric.
    pub fn metric_neighbors(&self, n: u64, p: &SurfacePoint) -> Vec<SurfacePoint> {
        let h = rat(1, n as i64);
        let mut out = Vec::with_capacity(4);
        if p.is_corner() {
            let class = &self.corner_classes[self.class_index(p.square)];
            for &j in class {
                out.extend(self.unit_steps(j, &p.x, &p.y, &h));
            }
        } else {
            out.extend(self.unit_steps(p.square, &p.x, &p.y, &h));
        }
        out.sort();
        out.dedup();
        out.retain(|q| q != p);
        out
    }

    fn class_index(&self, square: usize) -> usize {
        let rep = self.corner_rep[square];
        self.corner_classes.iter().position(|c| c[0] == rep).expect("every square has a class")
    }

    fn unit_steps(&self, square: usize, x: &BigRational, y: &BigRational, h: &BigRational) -> [SurfacePoint; 4] {
        [
            self.point_unrolled(square, &(x + h), y),
            self.point_unrolled(square, &(x - h), y),
            self.point_unrolled(square, x, &(y + h)),
            self.point_unrolled(square, x, &(y - h)),
        ]
    }
}

/// A point of the surface in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfacePoint {
    pub square: usize,
    pub x: BigRational,
    pub y: BigRational,
}

impl SurfacePoint {
    pub fn is_corner(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

impl fmt::Display for SurfacePoint {
    /// `sq:xnum/xden:ynum/yden`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}/{}:{}/{}", self.square, self.x.numer(), self.x.denom(), self.y.numer(), self.y.denom())
    }
}

impl std::str::FromStr for SurfacePoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("point `{s}`: expected sq:xnum/xden:ynum/yden")));
        }
        let square = parts[0].parse().map_err(|_| Error::Parse(format!("square in `{s}`")))?;
        let x = parse_ratio(parts[1])?;
        let y = parse_ratio(parts[2])?;
        Ok(SurfacePoint { square, x, y })
    }
}

pub fn parse_ratio(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("rational `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// A point of the torus `[0,1)^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPoint {
    pub x: BigRational,
    pub y: BigRational,
}

impl TorusPoint {
    /// Reduce arbitrary rational coordinates modulo 1.
    pub fn new(x: BigRational, y: BigRational) -> Self {
        TorusPoint { x: split_floor(&x).1, y: split_floor(&y).1 }
    }
}
