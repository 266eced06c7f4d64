use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_complex::Complex64;

use crate::arith::{extended_gcd, gcd};
use crate::{Error, Result};

/// A point `x + iy` of the upper half plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfPlanePoint {
    pub x: f64,
    pub y: f64,
}

impl HalfPlanePoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && y > 0.0) {
            return Err(Error::Invalid(format!(
                "point {x}+{y}i is not in the upper half plane"
            )));
        }
        Ok(HalfPlanePoint { x, y })
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        Self::new(z.re, z.im)
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    /// Parses `x+yi` or `yi`.
    pub fn parse(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Invalid(format!("cannot parse point {s:?}; expected x+yi"));
        let body = t.strip_suffix('i').ok_or_else(bad)?;
        // split at the last sign that is not an exponent sign or leading sign
        let bytes = body.as_bytes();
        let mut split = None;
        for j in (1..bytes.len()).rev() {
            if (bytes[j] == b'+' || bytes[j] == b'-') && !matches!(bytes[j - 1], b'e' | b'E') {
                split = Some(j);
                break;
            }
        }
        let (x, y) = match split {
            Some(j) => {
                let x: f64 = body[..j].parse().map_err(|_| bad())?;
                let ys = &body[j..];
                let y: f64 = match ys {
                    "+" => 1.0,
                    "-" => -1.0,
                    _ => ys.parse().map_err(|_| bad())?,
                };
                (x, y)
            }
            None => (0.0, if body.is_empty() { 1.0 } else { body.parse().map_err(|_| bad())? }),
        };
        Self::new(x, y)
    }
}

impl fmt::Display for HalfPlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}i", self.x, self.y)
    }
}

/// An element `(a, b; c, d)` of `SL_2(Z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl GroupElement {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = a as i128 * d as i128 - b as i128 * c as i128;
        if det != 1 {
            return Err(Error::Invalid(format!(
                "({a},{b};{c},{d}) has determinant {det}, not 1"
            )));
        }
        Ok(GroupElement { a, b, c, d })
    }

    /// Validates membership in `Gamma_0(l)`.
    pub fn gamma0(a: i64, b: i64, c: i64, d: i64, l: u64) -> Result<Self> {
        let g = Self::new(a, b, c, d)?;
        if !g.in_gamma0(l) {
            return Err(Error::Invalid(format!("({a},{b};{c},{d}) is not in Gamma_0({l})")));
        }
        Ok(g)
    }

    /// Validates membership in `Gamma_1(l)`.
    pub fn gamma1(a: i64, b: i64, c: i64, d: i64, l: u64) -> Result<Self> {
        let g = Self::new(a, b, c, d)?;
        if !g.in_gamma1(l) {
            return Err(Error::Invalid(format!("({a},{b};{c},{d}) is not in Gamma_1({l})")));
        }
        Ok(g)
    }

    pub const IDENTITY: GroupElement = GroupElement { a: 1, b: 0, c: 0, d: 1 };
    pub const T: GroupElement = GroupElement { a: 1, b: 1, c: 0, d: 1 };
    pub const S: GroupElement = GroupElement { a: 0, b: -1, c: 1, d: 0 };

    pub fn translation(n: i64) -> Self {
        GroupElement { a: 1, b: n, c: 0, d: 1 }
    }

    pub fn in_gamma0(&self, l: u64) -> bool {
        self.c.rem_euclid(l as i64) == 0
    }

    pub fn in_gamma1(&self, l: u64) -> bool {
        let l = l as i64;
        self.in_gamma0(l as u64) && (self.a - 1).rem_euclid(l) == 0 && (self.d - 1).rem_euclid(l) == 0
    }

    pub fn mul(&self, o: &GroupElement) -> GroupElement {
        GroupElement {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn neg(&self) -> GroupElement {
        GroupElement { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    pub fn is_plus_minus_identity(&self) -> bool {
        self.b == 0 && self.c == 0 && self.a == self.d
    }

    /// `c tau + d`.
    pub fn automorphy(&self, tau: Complex64) -> Complex64 {
        tau * self.c as f64 + self.d as f64
    }

    pub fn act_complex(&self, tau: Complex64) -> Complex64 {
        (tau * self.a as f64 + self.b as f64) / self.automorphy(tau)
    }

    pub fn act(&self, tau: HalfPlanePoint) -> HalfPlanePoint {
        let z = self.act_complex(tau.to_complex());
        // Im(g tau) = Im(tau) / |c tau + d|^2 keeps full relative accuracy
        let y = tau.y / self.automorphy(tau.to_complex()).norm_sqr();
        HalfPlanePoint { x: z.re, y }
    }

    /// The bottom row as a cusp `-d/c`.
    pub fn bottom_row(&self) -> CuspRational {
        CuspRational { c: self.c, d: self.d }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{},{})", self.a, self.b, self.c, self.d)
    }
}

/// The rational `-d/c` with `l | c`; `c = 0` stands for the cusp at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CuspRational {
    pub c: i64,
    pub d: i64,
}

impl CuspRational {
    pub fn new(c: i64, d: i64, l: u64) -> Result<Self> {
        if c.rem_euclid(l as i64) != 0 {
            return Err(Error::Invalid(format!("c = {c} is not divisible by the level {l}")));
        }
        if c != 0 && gcd(c, d) != 1 {
            return Err(Error::Invalid(format!("gcd({c}, {d}) != 1")));
        }
        Ok(CuspRational { c, d })
    }

    pub fn infinity() -> Self {
        CuspRational { c: 0, d: 1 }
    }

    pub fn is_infinity(&self) -> bool {
        self.c == 0
    }

    /// Same rational with `c > 0` (or `(0, 1)` at infinity).
    pub fn normalized(&self) -> Self {
        if self.c == 0 {
            CuspRational::infinity()
        } else if self.c < 0 {
            CuspRational { c: -self.c, d: -self.d }
        } else {
            *self
        }
    }
}

/// Completes a coprime bottom row `(c, d)` to `(a, b; c, d)` in `SL_2(Z)`,
/// choosing the solution with the smallest `|b|`.
pub fn completion(c: i64, d: i64) -> Result<GroupElement> {
    if gcd(c, d) != 1 {
        return Err(Error::Invalid(format!("bottom row ({c}, {d}) is not coprime")));
    }
    if d == 0 {
        // c = +-1
        return GroupElement::new(0, -c, c, 0);
    }
    // a d - b c = 1
    let (_, x, y) = extended_gcd(d, c);
    let g = x * d + y * c;
    let (mut a, mut b) = (x * g, -y * g);
    // shift by t: a + t c, b + t d; pick t minimizing |b + t d|
    let t = (-(b as f64) / d as f64).round() as i64;
    a += t * c;
    b += t * d;
    for s in [-1i64, 1] {
        if (b + s * d).abs() < b.abs() {
            a += s * c;
            b += s * d;
        }
    }
    GroupElement::new(a, b, c, d)
}

fn unit_normalize(c: i64, d: i64, l: i64, units: &[i64]) -> (i64, i64) {
    let (c, d) = (c.rem_euclid(l), d.rem_euclid(l));
    units
        .iter()
        .map(|&u| ((u * c).rem_euclid(l), (u * d).rem_euclid(l)))
        .min()
        .unwrap_or((0, 0))
}

fn units_mod(l: u64) -> Vec<i64> {
    (0..l as i64).filter(|&u| gcd(u, l as i64) == 1).collect::<Vec<_>>()
}

/// Breadth-first enumeration of right cosets `G g` under right multiplication
/// by `T` and `S`. Returns the representatives and, for every coset and
/// generator, the index of the target coset.
fn enumerate<K: std::hash::Hash + Eq + Copy>(
    key: impl Fn(&GroupElement) -> K,
) -> (Vec<GroupElement>, Vec<[usize; 2]>) {
    let mut reps = vec![GroupElement::IDENTITY];
    let mut index = HashMap::new();
    index.insert(key(&GroupElement::IDENTITY), 0usize);
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(j) = queue.pop_front() {
        let mut e = [0usize; 2];
        for (slot, g) in [GroupElement::T, GroupElement::S].iter().enumerate() {
            let next = reps[j].mul(g);
            let k = key(&next);
            let target = *index.entry(k).or_insert_with(|| {
                reps.push(next);
                queue.push_back(reps.len() - 1);
                reps.len() - 1
            });
            e[slot] = target;
        }
        if edges.len() <= j {
            edges.resize(j + 1, [0, 0]);
        }
        edges[j] = e;
    }
    (reps, edges)
}

/// Right coset representatives of `Gamma_0(l)` in `SL_2(Z)`, identity first.
pub fn gamma0_cosets(l: u64) -> Vec<GroupElement> {
    let units = units_mod(l);
    let li = l as i64;
    enumerate(|g| unit_normalize(g.c, g.d, li, &units)).0
}

/// Right coset representatives of `Gamma_1(l)` in `SL_2(Z)`, identity first.
///
/// For `l >= 3` the group `Gamma_1(l)` does not contain `-1`, so `g` and
/// `-g` are distinct cosets and the list has `l^2 prod_{p | l}(1 - p^{-2})`
/// entries; the images `g tau` of a fundamental domain then cover
/// `Gamma_1(l) \ H` twice.
pub fn gamma1_cosets(l: u64) -> Vec<GroupElement> {
    let li = l as i64;
    enumerate(|g| (g.c.rem_euclid(li), g.d.rem_euclid(li))).0
}

/// Generators of `Gamma_0(l)` from the coset graph: every edge
/// `r_j x r_k^{-1}` with `x` in `{T, S}`, deduplicated up to sign and with
/// `+-1` dropped. The translation `T` is always first.
pub fn gamma0_generators(l: u64) -> Vec<GroupElement> {
    let units = units_mod(l);
    let li = l as i64;
    let (reps, edges) = enumerate(|g| unit_normalize(g.c, g.d, li, &units));
    let mut out: Vec<GroupElement> = Vec::new();
    for (j, e) in edges.iter().enumerate() {
        for (slot, x) in [GroupElement::T, GroupElement::S].iter().enumerate() {
            let g = reps[j].mul(x).mul(&reps[e[slot]].inverse());
            debug_assert!(g.in_gamma0(l));
            if g.is_plus_minus_identity() {
                continue;
            }
            if out.iter().any(|h| *h == g || *h == g.neg()) {
                continue;
            }
            out.push(g);
        }
    }
    out
}
