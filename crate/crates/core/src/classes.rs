//! The two constraint classes: candidate enumeration with parity symmetry,
//! companion primitivity and dominance-minimal representatives, the parity
//! admissibility lemma predicate, the LS1/LS2 property checkers, multiplier
//! products, and the exact root-location class filter.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::CompanionDigraph;
use crate::poly::IntPoly;
use crate::rational::{format_rational, rat};
use crate::roots::{
    aberth_roots, count_roots_in_disk_robust, largest_root_enclosure, root_modulus_profile,
    RootEnclosure,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    N,
    S,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::N => write!(f, "N"),
            Family::S => write!(f, "S"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "N" | "n" => Ok(Family::N),
            "S" | "s" => Ok(Family::S),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

/// A constraint class: family N at degree 2k-1 or family S at degree 4k,
/// with candidate coefficients bounded by `coeff_bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSpec {
    pub family: Family,
    pub k: u32,
    pub coeff_bound: u32,
}

pub const DEFAULT_COEFF_BOUND: u32 = 3;

/// Exhaustive search refuses degrees above this cap.
pub const EXHAUSTIVE_DEGREE_CAP: usize = 21;

impl ClassSpec {
    pub fn new(family: Family, k: u32, coeff_bound: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!("k must be >= 2, got {k}")));
        }
        if coeff_bound < 2 {
            return Err(Error::InvalidParameter(format!(
                "coeff_bound must be >= 2 to admit the even-pair representatives, got {coeff_bound}"
            )));
        }
        Ok(ClassSpec {
            family,
            k,
            coeff_bound,
        })
    }

    pub fn degree(&self) -> usize {
        match self.family {
            Family::N => 2 * self.k as usize - 1,
            Family::S => 4 * self.k as usize,
        }
    }

    /// The polynomial the minimality theorems name for this class.
    pub fn theorem_polynomial(&self) -> IntPoly {
        let d = self.degree();
        let (hi, lo) = match self.family {
            Family::N => (self.k as usize, self.k as usize - 1),
            Family::S => (2 * self.k as usize + 1, 2 * self.k as usize - 1),
        };
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = BigInt::one();
        coeffs[hi] = BigInt::from(-1);
        coeffs[lo] = BigInt::from(-1);
        coeffs[0] = BigInt::from(-1);
        IntPoly::from_ascending(coeffs)
    }

    /// The six degree-2 multipliers of the S family, in a fixed order.
    pub fn multipliers() -> Vec<IntPoly> {
        vec![
            IntPoly::from_descending(vec![1i64, 2, 1]),  // (x+1)^2
            IntPoly::from_descending(vec![1i64, -2, 1]), // (x-1)^2
            IntPoly::from_descending(vec![1i64, 0, 1]),  // x^2+1
            IntPoly::from_descending(vec![1i64, 0, -1]), // x^2-1
            IntPoly::from_descending(vec![1i64, 1, 1]),  // x^2+x+1
            IntPoly::from_descending(vec![1i64, -1, 1]), // x^2-x+1
        ]
    }
}

/// Coefficient vector a_1..a_{d-1} of the candidate x^d - a_{d-1}x^{d-1} -
/// ... - a_1 x - 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CandidateVector {
    pub a: Vec<u32>,
}

impl CandidateVector {
    pub fn new(a: Vec<u32>) -> Self {
        CandidateVector { a }
    }

    pub fn degree(&self) -> usize {
        self.a.len() + 1
    }

    pub fn poly(&self) -> IntPoly {
        let d = self.degree();
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[0] = BigInt::from(-1);
        for (i, &v) in self.a.iter().enumerate() {
            coeffs[i + 1] = BigInt::from(-(v as i64));
        }
        coeffs[d] = BigInt::one();
        IntPoly::from_ascending(coeffs)
    }

    pub fn companion(&self) -> CompanionDigraph {
        let mut bottom = Vec::with_capacity(self.degree());
        bottom.push(BigInt::one());
        bottom.extend(self.a.iter().map(|&v| BigInt::from(v)));
        CompanionDigraph::from_bottom_row(bottom).expect("nonnegative bottom row")
    }

    pub fn support(&self) -> Vec<usize> {
        self.a
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Entrywise >= with at least one strict coordinate.
    pub fn dominates(&self, other: &CandidateVector) -> bool {
        self.a.len() == other.a.len()
            && self.a.iter().zip(&other.a).all(|(x, y)| x >= y)
            && self.a != other.a
    }
}

/// Cycle gcd of the companion digraph on the support alone: every cycle goes
/// through the bottom vertex, so the gcd is gcd({d} ∪ {d-i : a_i ≠ 0}).
fn support_cycle_gcd(d: usize, a: &[u32]) -> usize {
    let mut g = d;
    for (idx, &v) in a.iter().enumerate() {
        if v != 0 {
            g = g.gcd(&(d - (idx + 1)));
        }
    }
    g
}

fn support_primitive(d: usize, a: &[u32]) -> bool {
    a.iter().any(|&v| v != 0) && support_cycle_gcd(d, a) == 1
}

/// Reduction-minimality: no single a_i -= 2 step keeps the vector primitive
/// (parity is preserved automatically by the step).
fn reducible(d: usize, a: &[u32]) -> bool {
    let mut buf = a.to_vec();
    for i in 0..a.len() {
        if a[i] >= 2 {
            buf[i] = a[i] - 2;
            let ok = support_primitive(d, &buf);
            buf[i] = a[i];
            if ok {
                return true;
            }
        }
    }
    false
}

fn pair_parity_ok(a: &[u32]) -> bool {
    let d = a.len() + 1;
    (1..d).all(|i| (a[i - 1] % 2) == (a[d - i - 1] % 2))
}

fn seed_clause_holds(d: usize, a: &[u32]) -> bool {
    (1..d).any(|i| a[i - 1] != 0 && d.gcd(&(d - i)) == 1)
}

/// The parity-admissibility predicate of the mod-2 lemma: symmetric parity
/// a_i ≡ a_{d-i} (mod 2) for all i, plus a primitivity seed index i with
/// gcd(d, d-i) = 1 and a_i ≠ 0.
pub fn parity_admissible(v: &CandidateVector, spec: &ClassSpec) -> Result<bool> {
    let d = spec.degree();
    if v.a.len() != d - 1 {
        return Err(Error::LengthMismatch {
            got: v.a.len(),
            expected: d - 1,
        });
    }
    Ok(pair_parity_ok(&v.a) && seed_clause_holds(d, &v.a))
}

/// Minimal-representative candidates of the class: parity-symmetric vectors
/// whose companion digraph is primitive and which cannot be reduced by any
/// parity-preserving -2 step without losing primitivity. Deterministic
/// lexicographic order.
///
/// Representatives have odd entries equal to 1 and even entries in {0, 2}:
/// any entry >= 3 reduces by 2 without changing the support, so it is never
/// minimal. Generation therefore walks symmetric pair slots over
/// {(0,0),(0,2),(1,1),(2,0),(2,2)} (middle entry in {0,1,2} for even degree)
/// and filters.
pub fn enumerate_candidates(spec: &ClassSpec) -> Vec<CandidateVector> {
    let d = spec.degree();
    let n = d - 1;
    let pair_count = n / 2;
    let has_middle = n % 2 == 1;
    let pair_options: [(u32, u32); 5] = [(0, 0), (0, 2), (1, 1), (2, 0), (2, 2)];
    let middle_options: [u32; 3] = [0, 1, 2];

    let mut out = Vec::new();
    let mut slots = vec![0usize; pair_count + usize::from(has_middle)];
    let mut a = vec![0u32; n];
    loop {
        for (p, &s) in slots.iter().take(pair_count).enumerate() {
            let (x, y) = pair_options[s];
            a[p] = x;
            a[n - 1 - p] = y;
        }
        if has_middle {
            a[pair_count] = middle_options[slots[pair_count]];
        }
        if support_primitive(d, &a) && !reducible(d, &a) {
            out.push(CandidateVector::new(a.clone()));
        }
        // odometer over slots
        let mut pos = slots.len();
        loop {
            if pos == 0 {
                out.sort();
                return out;
            }
            pos -= 1;
            let base = if pos < pair_count {
                pair_options.len()
            } else {
                middle_options.len()
            };
            slots[pos] += 1;
            if slots[pos] < base {
                break;
            }
            slots[pos] = 0;
        }
    }
}

/// Reference filter over the full box {0..coeff_bound}^{d-1}; intended for
/// tests at degree <= 7 where the box is small.
pub fn brute_force_candidates(spec: &ClassSpec) -> Vec<CandidateVector> {
    let d = spec.degree();
    let n = d - 1;
    let bound = spec.coeff_bound;
    let mut out = Vec::new();
    let mut a = vec![0u32; n];
    loop {
        if pair_parity_ok(&a) && support_primitive(d, &a) && !brute_reducible(d, &a) {
            out.push(CandidateVector::new(a.clone()));
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                out.sort();
                return out;
            }
            pos -= 1;
            a[pos] += 1;
            if a[pos] <= bound {
                break;
            }
            a[pos] = 0;
        }
    }
}

fn brute_reducible(d: usize, a: &[u32]) -> bool {
    let mut buf = a.to_vec();
    for i in 0..a.len() {
        if a[i] >= 2 {
            buf[i] = a[i] - 2;
            let ok = support_primitive(d, &buf);
            buf[i] = a[i];
            if ok {
                return true;
            }
        }
    }
    false
}

/// Enumerated candidates that are primitive but fail the mod-2 lemma's
/// single-index gcd clause; the lemma's clause is strictly stronger than
/// cycle-gcd primitivity, and these are the witnesses.
pub fn seed_divergences(spec: &ClassSpec) -> Vec<CandidateVector> {
    let d = spec.degree();
    enumerate_candidates(spec)
        .into_iter()
        .filter(|v| !seed_clause_holds(d, &v.a))
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MultiplierProduct {
    pub multiplier: IntPoly,
    pub product: IntPoly,
    /// The multiplier reduced mod 2: always x^2+1 or x^2+x+1.
    pub multiplier_mod2: IntPoly,
}

/// The six products p·(x±1)^2, p·(x^2±1), p·(x^2±x+1), in the fixed order of
/// ClassSpec::multipliers().
pub fn multiplier_products(p: &IntPoly) -> Vec<MultiplierProduct> {
    ClassSpec::multipliers()
        .into_iter()
        .map(|m| MultiplierProduct {
            product: p.multiply(&m),
            multiplier_mod2: m.mod2(),
            multiplier: m,
        })
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PropertyItem {
    pub label: String,
    pub pass: bool,
    /// False for root-location items evaluated from the float profile.
    pub certified: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PropertyReport {
    pub proposition: String,
    pub genus: usize,
    pub items: Vec<PropertyItem>,
    pub all_pass: bool,
}

impl PropertyReport {
    fn finish(proposition: &str, genus: usize, items: Vec<PropertyItem>) -> Self {
        let all_pass = items.iter().all(|i| i.pass);
        PropertyReport {
            proposition: proposition.into(),
            genus,
            items,
            all_pass,
        }
    }
}

/// Itemized check of the four LS1 conditions for a nonorientable-surface
/// characteristic polynomial (genus inferred as degree + 1). The root-location
/// item is evaluated from the non-certified modulus profile.
pub fn check_ls1(p: &IntPoly) -> Result<PropertyReport> {
    let d = p.degree();
    let genus = d + 1;
    let mut items = Vec::new();
    items.push(PropertyItem {
        label: "deg(p) = g-1".into(),
        pass: true,
        certified: true,
        detail: format!("degree {d}, genus {genus}"),
    });
    let c0 = p.constant_coeff();
    let item2 = p.is_monic() && (c0 == BigInt::one() || c0 == BigInt::from(-1));
    items.push(PropertyItem {
        label: "monic with constant coefficient ±1".into(),
        pass: item2,
        certified: true,
        detail: format!("leading {}, constant {c0}", p.leading()),
    });

    let profile = root_modulus_profile(p)?;
    let annulus = annulus_check(&profile.moduli, 0);
    let not_recip = !p.is_reciprocal() && !p.is_antireciprocal();
    items.push(PropertyItem {
        label: "other roots strictly inside (1/λ, λ); not (anti)reciprocal".into(),
        pass: annulus.0 && not_recip,
        certified: false,
        detail: format!("{}; reciprocal check exact: {}", annulus.1, not_recip),
    });
    items.push(PropertyItem {
        label: "reciprocal mod 2".into(),
        pass: p.is_reciprocal_mod2(),
        certified: true,
        detail: format!("{} mod 2", p.mod2()),
    });
    Ok(PropertyReport::finish("LS1", genus, items))
}

/// Itemized check of the four LS2 conditions for an orientation-reversing
/// characteristic polynomial (genus inferred as degree / 2).
pub fn check_ls2(p: &IntPoly) -> Result<PropertyReport> {
    let d = p.degree();
    if d % 2 != 0 {
        return Ok(PropertyReport::finish(
            "LS2",
            0,
            vec![PropertyItem {
                label: "deg(p) = 2g".into(),
                pass: false,
                certified: true,
                detail: format!("odd degree {d}"),
            }],
        ));
    }
    let genus = d / 2;
    let mut items = Vec::new();
    items.push(PropertyItem {
        label: "deg(p) = 2g".into(),
        pass: true,
        certified: true,
        detail: format!("degree {d}, genus {genus}"),
    });
    let expected_c0 = if genus % 2 == 0 {
        BigInt::one()
    } else {
        BigInt::from(-1)
    };
    let c0 = p.constant_coeff();
    items.push(PropertyItem {
        label: "monic with constant coefficient (-1)^g".into(),
        pass: p.is_monic() && c0 == expected_c0,
        certified: true,
        detail: format!("constant {c0}, expected {expected_c0}"),
    });
    items.push(PropertyItem {
        label: "p(x) = (-1)^g x^{2g} p(-1/x)".into(),
        pass: p.satisfies_ls2_symmetry()?,
        certified: true,
        detail: String::new(),
    });

    let profile = root_modulus_profile(p)?;
    let annulus = annulus_check(&profile.moduli, 1);
    // the boundary exception must be realized by a real negative root -1/λ
    let roots = aberth_roots(p)?;
    let lam = profile.moduli.first().map(|(m, _)| *m).unwrap_or(1.0);
    let has_neg_inv = roots
        .iter()
        .any(|z| (z.re + 1.0 / lam).abs() < 1e-6 && z.im.abs() < 1e-6);
    items.push(PropertyItem {
        label: "other roots than λ and -1/λ strictly inside (1/λ, λ)".into(),
        pass: annulus.0 && has_neg_inv,
        certified: false,
        detail: format!("{}; -1/λ found: {has_neg_inv}", annulus.1),
    });
    Ok(PropertyReport::finish("LS2", genus, items))
}

/// Checks that all moduli except the largest lie strictly inside
/// (1/λ, λ), allowing `boundary_allowance` of them to sit at 1/λ.
fn annulus_check(moduli: &[(f64, f64)], boundary_allowance: usize) -> (bool, String) {
    if moduli.len() < 2 {
        return (true, "no other roots".into());
    }
    let (lam, r0) = moduli[0];
    let inv = 1.0 / lam;
    let mut at_boundary = 0usize;
    for &(m, r) in &moduli[1..] {
        let slack = r0 + r + 1e-9;
        if m >= lam - slack {
            return (false, format!("root modulus {m:.6} reaches λ {lam:.6}"));
        }
        if (m - inv).abs() <= slack {
            at_boundary += 1;
        } else if m < inv {
            return (false, format!("root modulus {m:.6} below 1/λ {inv:.6}"));
        }
    }
    if at_boundary != boundary_allowance {
        return (
            false,
            format!("{at_boundary} roots at modulus 1/λ, expected {boundary_allowance}"),
        );
    }
    (true, format!("λ ≈ {lam:.6}, annulus respected"))
}

/// Exact certificate for the class root-location condition.
///
/// The upper annulus bound |μ| < λ for μ ≠ λ is already guaranteed by
/// primitivity of the companion digraph, so only the lower bound is decided
/// here: family N forbids any root with modulus <= 1/λ, family S requires
/// exactly one, the simple real root -1/λ.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RootLocationCertificate {
    pub pass: bool,
    pub reason: String,
    /// -1/λ is a root of p (decided exactly via gcd with the negated reversal).
    pub neg_inv_root: bool,
    /// +1/λ is a root of p (decided exactly via gcd with the reversal).
    pub pos_inv_root: bool,
    /// Final inner radius (certified < 1/λ) and its exact disk root count.
    pub inner_radius: Option<String>,
    pub inner_count: Option<usize>,
    /// Final outer radius (certified > 1/λ) and its exact disk root count.
    pub outer_radius: Option<String>,
    pub outer_count: Option<usize>,
}

const ROOT_LOCATION_ROUNDS: usize = 64;

/// Decides whether the non-dominant roots of a class-shaped polynomial
/// respect the lower annulus bound, exactly. `p` must be a class candidate:
/// monic, constant -1, nonpositive middle coefficients, primitive companion.
pub fn root_location_filter(p: &IntPoly, family: Family) -> Result<RootLocationCertificate> {
    let mut enc = largest_root_enclosure(p, &rat(1, 65536))?;

    let neg_inv_root = reversal_shares_dominant_root(p, &p.reversed_negated(), &enc);
    let pos_inv_root = reversal_shares_dominant_root(p, &p.reversed(), &enc);

    let fail = |reason: String, neg: bool, pos: bool| RootLocationCertificate {
        pass: false,
        reason,
        neg_inv_root: neg,
        pos_inv_root: pos,
        inner_radius: None,
        inner_count: None,
        outer_radius: None,
        outer_count: None,
    };

    match family {
        Family::N => {
            if neg_inv_root {
                return Ok(fail(
                    "-1/λ is a root (boundary of the open annulus)".into(),
                    true,
                    pos_inv_root,
                ));
            }
            if pos_inv_root {
                return Ok(fail(
                    "+1/λ is a root (boundary of the open annulus)".into(),
                    false,
                    true,
                ));
            }
        }
        Family::S => {
            if !neg_inv_root {
                return Ok(fail(
                    "-1/λ is not a root (required for the S class)".into(),
                    false,
                    pos_inv_root,
                ));
            }
            if pos_inv_root {
                return Ok(fail(
                    "+1/λ is a root (only -1/λ may sit on the boundary)".into(),
                    true,
                    true,
                ));
            }
        }
    }

    // exactly the -1/λ root may sit inside the outer disk for family S
    let expected_outer = match family {
        Family::N => 0,
        Family::S => 1,
    };

    for _ in 0..ROOT_LOCATION_ROUNDS {
        let inner = BigRational::new(enc.hi().denom().clone(), enc.hi().numer().clone());
        let outer = BigRational::new(enc.lo().denom().clone(), enc.lo().numer().clone());
        let inner_count = count_roots_in_disk_robust(p, &inner, true)?;
        if inner_count > 0 {
            return Ok(RootLocationCertificate {
                pass: false,
                reason: format!(
                    "{inner_count} root(s) with modulus < {} < 1/λ",
                    format_rational(&inner)
                ),
                neg_inv_root,
                pos_inv_root,
                inner_radius: Some(format_rational(&inner)),
                inner_count: Some(inner_count),
                outer_radius: None,
                outer_count: None,
            });
        }
        let outer_count = count_roots_in_disk_robust(p, &outer, false)?;
        if outer_count == expected_outer {
            return Ok(RootLocationCertificate {
                pass: true,
                reason: "lower annulus bound certified".into(),
                neg_inv_root,
                pos_inv_root,
                inner_radius: Some(format_rational(&inner)),
                inner_count: Some(inner_count),
                outer_radius: Some(format_rational(&outer)),
                outer_count: Some(outer_count),
            });
        }
        // roots caught between the two radii: tighten the λ bracket and retry
        for _ in 0..4 {
            enc.bisect_step();
        }
    }
    Err(Error::Undecided(format!(
        "root-location filter did not separate moduli from 1/λ for {p}"
    )))
}

/// True iff the dominant root of p is shared with `transform` (so the
/// corresponding reversal image of λ is itself a root of p). Exact: the gcd
/// divides p, and the bracket isolates λ among the roots of p.
fn reversal_shares_dominant_root(p: &IntPoly, transform: &IntPoly, enc: &RootEnclosure) -> bool {
    let g = p.gcd(transform);
    enc.poly_vanishes_here(&g)
}
