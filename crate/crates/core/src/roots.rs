//! Certified enclosure of the dominant real root by exact rational bisection,
//! enclosure comparison with an exact shared-root fallback, exact disk root
//! counting, and a non-certified full root-modulus profile.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::rational::{bigint_pow, format_rational, rat, rat_int};

/// Width below which compare() falls back to the exact gcd tie test.
fn shared_root_width() -> BigRational {
    BigRational::new(BigInt::one(), bigint_pow(&BigInt::from(10), 30))
}

/// 1 + max |non-leading coefficient|: strict upper bound for all root moduli
/// of a monic polynomial.
pub fn cauchy_bound(p: &IntPoly) -> Result<BigRational> {
    if p.is_zero() || !p.is_monic() {
        return Err(Error::NotMonic(p.to_string()));
    }
    let d = p.degree();
    let mut m = BigInt::zero();
    for i in 0..d {
        let a = p.coeff(i).abs();
        if a > m {
            m = a;
        }
    }
    Ok(BigRational::from_integer(m + BigInt::one()))
}

/// Sign-certified bracket around the largest real root: eval(lo) < 0 < eval(hi),
/// lo >= 1, hi initialized at a proven root bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootEnclosure {
    poly: IntPoly,
    lo: BigRational,
    hi: BigRational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Comparison {
    Less,
    Greater,
    SharedRoot,
}

impl RootEnclosure {
    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.hi + &self.lo) / rat_int(2)
    }

    /// Both sign certificates, checked exactly.
    pub fn invariants_hold(&self) -> bool {
        self.poly.sign_at(&self.lo) < 0
            && self.poly.sign_at(&self.hi) > 0
            && self.lo >= rat_int(1)
            && self.lo < self.hi
    }

    /// One bisection halving, preserving both sign certificates. An exact hit
    /// on the root (only possible at rational midpoints of non-class inputs)
    /// re-brackets symmetrically around the midpoint.
    pub fn bisect_step(&mut self) {
        let mid = self.midpoint();
        match self.poly.sign_at(&mid) {
            s if s < 0 => self.lo = mid,
            s if s > 0 => self.hi = mid,
            _ => {
                let mut eps = self.width() / rat_int(8);
                for _ in 0..64 {
                    let lo = &mid - &eps;
                    let hi = &mid + &eps;
                    if lo > self.lo
                        && hi < self.hi
                        && self.poly.sign_at(&lo) < 0
                        && self.poly.sign_at(&hi) > 0
                    {
                        self.lo = lo;
                        self.hi = hi;
                        return;
                    }
                    eps = eps / rat_int(2);
                }
                panic!("could not re-bracket exact rational root of {}", self.poly);
            }
        }
    }

    pub fn refine(&mut self, tol: &BigRational) {
        while self.width() > *tol {
            self.bisect_step();
        }
    }

    /// True iff g has a sign change across this bracket, i.e. g vanishes at
    /// the enclosed root (g is expected to divide self.poly).
    pub fn poly_vanishes_here(&self, g: &IntPoly) -> bool {
        if g.is_zero() || g.degree() == 0 {
            return false;
        }
        g.sign_at(&self.lo) * g.sign_at(&self.hi) < 0
    }
}

/// Bisection enclosure of the largest real root on [1, cauchy_bound].
///
/// Requires eval(p, 1) < 0, which holds for every class polynomial. When
/// eval(p, 1) = 0 the (x - 1) factor is deflated exactly and the enclosure is
/// retried on the quotient; when eval(p, 1) > 0 the interval is scanned at
/// resolution 1/1024 for the rightmost sign change before giving up.
pub fn largest_root_enclosure(p: &IntPoly, tol: &BigRational) -> Result<RootEnclosure> {
    if tol <= &BigRational::zero() {
        return Err(Error::InvalidParameter("tol must be positive".into()));
    }
    let bound = cauchy_bound(p)?;
    let one = rat_int(1);
    let s1 = p.sign_at(&one);
    if s1 == 0 {
        let deflated = p.exact_divide(&IntPoly::from_descending(vec![1i64, -1]))?;
        if deflated.degree() == 0 {
            return Err(Error::NoSignChange(format!("{p} has no root above 1")));
        }
        return largest_root_enclosure(&deflated, tol);
    }
    let (lo, hi);
    if s1 < 0 {
        lo = one;
        hi = bound.clone();
    } else {
        // defensive scan from the right for the last sign change in [1, B]
        let step = rat(1, 1024);
        let mut found = None;
        let mut x = bound.clone() - step.clone();
        while x > one {
            if p.sign_at(&x) < 0 {
                found = Some(x.clone());
                break;
            }
            x -= step.clone();
        }
        match found {
            Some(neg) => {
                lo = neg.clone();
                // walk right to a positive point (the Cauchy bound at worst)
                let mut up = neg + step.clone();
                while p.sign_at(&up) <= 0 {
                    up += step.clone();
                }
                hi = up;
            }
            None => {
                return Err(Error::NoSignChange(format!(
                    "{p} has eval(1) > 0 and no sign change in [1, {}]",
                    bound
                )))
            }
        }
    }
    let mut enc = RootEnclosure {
        poly: p.clone(),
        lo,
        hi,
    };
    // the initial hi is a strict root bound, so the sign certificate holds
    assert!(enc.invariants_hold(), "sign certificates failed for {p}");
    enc.refine(tol);
    Ok(enc)
}

/// Orders two enclosed roots, refining as needed; ties are decided exactly via
/// the integer polynomial gcd.
pub fn compare(a: &mut RootEnclosure, b: &mut RootEnclosure) -> Comparison {
    let threshold = shared_root_width();
    let mut gcd_checked = false;
    loop {
        if a.hi <= b.lo {
            return Comparison::Less;
        }
        if b.hi <= a.lo {
            return Comparison::Greater;
        }
        if !gcd_checked && a.width() < threshold && b.width() < threshold {
            gcd_checked = true;
            let g = a.poly().gcd(b.poly());
            if a.poly_vanishes_here(&g) && b.poly_vanishes_here(&g) {
                return Comparison::SharedRoot;
            }
        }
        a.bisect_step();
        b.bisect_step();
    }
}

/// Number of roots of p with |z| < radius, exactly (Cohn's recursion on the
/// Schur transform with content stripping). Returns None when the recursion
/// degenerates (a vanishing leading constant), which callers handle by
/// retrying at a jiggled radius.
pub fn count_roots_in_disk(p: &IntPoly, radius: &BigRational) -> Result<Option<usize>> {
    if p.is_zero() {
        return Err(Error::InvalidParameter(
            "disk count of the zero polynomial".into(),
        ));
    }
    if radius <= &BigRational::zero() {
        return Err(Error::InvalidParameter("radius must be positive".into()));
    }
    let d = p.degree();
    let u = radius.numer();
    let v = radius.denom();
    // f(z) = v^d p(u z / v): integer coefficients, roots scaled by v/u
    let mut f: Vec<BigInt> = (0..=d)
        .map(|i| p.coeff(i) * bigint_pow(u, i) * bigint_pow(v, d - i))
        .collect();
    // roots at the origin are inside any positive radius
    let mut at_zero = 0usize;
    while f.first().is_some_and(|c| c.is_zero()) {
        f.remove(0);
        at_zero += 1;
    }
    Ok(count_inside_unit(f).map(|c| c + at_zero))
}

fn strip_content(c: &mut [BigInt]) {
    use num_integer::Integer;
    let mut g = BigInt::zero();
    for v in c.iter() {
        g = g.gcd(v);
    }
    if g > BigInt::one() {
        for v in c.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// Cohn recursion: count = count(Tf) when (Tf)(0) > 0, deg(f) - count(Tf)
/// when (Tf)(0) < 0; degenerate when (Tf)(0) = 0.
fn count_inside_unit(mut c: Vec<BigInt>) -> Option<usize> {
    while c.last().is_some_and(|v| v.is_zero()) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Some(0);
    }
    let a0 = c[0].clone();
    let an = c[n].clone();
    let mut t: Vec<BigInt> = (0..n).map(|i| &a0 * &c[i] - &an * &c[n - i]).collect();
    let delta = t[0].clone();
    if delta.is_zero() {
        return None;
    }
    strip_content(&mut t);
    let sub = count_inside_unit(t)?;
    Some(if delta.is_positive() { sub } else { n - sub })
}

/// Disk count with automatic retry at slightly perturbed radii when the
/// recursion degenerates; perturbations stay on the given side of `pivot`
/// (shrink when radius < pivot, grow when radius > pivot) so squeeze logic
/// built on top remains sound.
pub fn count_roots_in_disk_robust(
    p: &IntPoly,
    radius: &BigRational,
    pivot_side_down: bool,
) -> Result<usize> {
    let mut r = radius.clone();
    for attempt in 0..24 {
        if let Some(n) = count_roots_in_disk(p, &r)? {
            return Ok(n);
        }
        let scale = BigRational::new(
            BigInt::from((1u64 << 40) + (attempt as u64 + 1)),
            BigInt::from(1u64 << 40),
        );
        r = if pivot_side_down {
            radius / scale
        } else {
            radius * scale
        };
    }
    Err(Error::Undecided(format!(
        "disk count degenerate near radius {}",
        format_rational(radius)
    )))
}

/// Non-certified multiset of all complex root moduli with residual-based
/// error radii, via Aberth–Ehrlich simultaneous iteration in f64.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RootModulusProfile {
    /// (modulus, error radius) sorted by descending modulus.
    pub moduli: Vec<(f64, f64)>,
    /// Always false: this profile never participates in certificates.
    pub certified: bool,
}

pub fn root_modulus_profile(p: &IntPoly) -> Result<RootModulusProfile> {
    if p.is_zero() || p.degree() == 0 {
        return Err(Error::InvalidParameter(
            "profile needs degree >= 1".into(),
        ));
    }
    let roots = aberth_roots(p)?;
    let d = p.degree();
    let coeffs: Vec<f64> = (0..=d).map(|i| big_to_f64(&p.coeff(i))).collect();
    let deriv: Vec<f64> = (1..=d).map(|i| coeffs[i] * i as f64).collect();
    let mut moduli: Vec<(f64, f64)> = roots
        .iter()
        .map(|z| {
            let pv = horner(&coeffs, *z);
            let dv = horner(&deriv, *z);
            let radius = if dv.norm() > 1e-300 {
                (d as f64) * pv.norm() / dv.norm() * 4.0 + 1e-12
            } else {
                pv.norm().powf(1.0 / d as f64) * 2.0 + 1e-12
            };
            (z.norm(), radius)
        })
        .collect();
    moduli.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    Ok(RootModulusProfile {
        moduli,
        certified: false,
    })
}

/// All complex roots by Aberth–Ehrlich; non-certified, report-level only.
pub fn aberth_roots(p: &IntPoly) -> Result<Vec<Complex64>> {
    let mut coeffs: Vec<f64> = (0..=p.degree()).map(|i| big_to_f64(&p.coeff(i))).collect();
    let mut zero_roots = 0usize;
    while coeffs.first().is_some_and(|c| *c == 0.0) {
        coeffs.remove(0);
        zero_roots += 1;
    }
    let d = coeffs.len() - 1;
    let mut roots = vec![Complex64::new(0.0, 0.0); zero_roots];
    if d == 0 {
        return Ok(roots);
    }
    let lead = coeffs[d];
    let max_ratio = coeffs[..d]
        .iter()
        .map(|c| (c / lead).abs())
        .fold(0.0f64, f64::max);
    let upper = 1.0 + max_ratio;
    let c0 = coeffs[0];
    let max_ratio0 = coeffs[1..]
        .iter()
        .map(|c| (c / c0).abs())
        .fold(0.0f64, f64::max);
    let lower = 1.0 / (1.0 + max_ratio0);
    let deriv: Vec<f64> = (1..=d).map(|i| coeffs[i] * i as f64).collect();

    let mut z: Vec<Complex64> = (0..d)
        .map(|j| {
            let t = (j as f64 + 0.5) / d as f64;
            let r = lower * (upper / lower).powf(t);
            let theta = 2.0 * std::f64::consts::PI * t + 0.7;
            Complex64::from_polar(r, theta)
        })
        .collect();

    let mut converged = false;
    for _ in 0..400 {
        let mut max_step = 0.0f64;
        for k in 0..d {
            let pv = horner(&coeffs, z[k]);
            let dv = horner(&deriv, z[k]);
            let newton = if dv.norm() > 1e-300 {
                pv / dv
            } else {
                Complex64::new(1e-8, 1e-8)
            };
            let mut s = Complex64::new(0.0, 0.0);
            for (j, zj) in z.iter().enumerate() {
                if j != k {
                    let diff = z[k] - zj;
                    if diff.norm() > 1e-300 {
                        s += diff.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * s;
            let w = if denom.norm() > 1e-300 {
                newton / denom
            } else {
                newton
            };
            z[k] -= w;
            let rel = w.norm() / (1.0 + z[k].norm());
            if rel > max_step {
                max_step = rel;
            }
        }
        if max_step < 1e-13 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence);
    }
    roots.extend(z);
    Ok(roots)
}

fn horner(coeffs: &[f64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

fn big_to_f64(v: &BigInt) -> f64 {
    v.to_f64().unwrap_or(f64::MAX)
}

/// Serialized form with exact rational endpoints.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnclosureJson {
    pub poly: IntPoly,
    pub lo: String,
    pub hi: String,
    pub approx: String,
}

impl From<&RootEnclosure> for EnclosureJson {
    fn from(e: &RootEnclosure) -> Self {
        EnclosureJson {
            poly: e.poly().clone(),
            lo: format_rational(e.lo()),
            hi: format_rational(e.hi()),
            approx: crate::rational::round_decimal(&e.midpoint(), 10),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_rational;

    fn p(desc: &[i64]) -> IntPoly {
        IntPoly::from_descending(desc.to_vec())
    }

    fn enclose(desc: &[i64], tol: &str) -> RootEnclosure {
        largest_root_enclosure(&p(desc), &parse_rational(tol).unwrap()).unwrap()
    }

    #[test]
    fn cauchy_bounds() {
        assert_eq!(cauchy_bound(&p(&[1, -1, -1, -1])).unwrap(), rat_int(2));
        assert_eq!(cauchy_bound(&p(&[1, -3, 1])).unwrap(), rat_int(4));
        let mut t2g20 = vec![0i64; 20];
        t2g20[0] = 1;
        t2g20[9] = -1;
        t2g20[10] = -1;
        t2g20[19] = -1;
        assert_eq!(cauchy_bound(&p(&t2g20)).unwrap(), rat_int(2));
        assert!(cauchy_bound(&p(&[2, 0, 1])).is_err());
    }

    #[test]
    fn golden_ratio_enclosure() {
        let e = enclose(&[1, -1, -1], "1e-9");
        assert!(e.invariants_hold());
        assert!(e.width() <= parse_rational("1e-9").unwrap());
        let phi = parse_rational("1.6180339887").unwrap();
        assert!(*e.lo() < phi && phi < *e.hi());
    }

    #[test]
    fn p1_zero_deflates() {
        // (x - 1)(x^2 - x - 1): eval at 1 is 0, deflation retries on the quadratic
        let prod = p(&[1, -1]).multiply(&p(&[1, -1, -1]));
        let e = largest_root_enclosure(&prod, &parse_rational("1e-9").unwrap()).unwrap();
        let phi = parse_rational("1.6180339887").unwrap();
        assert!(*e.lo() < phi && phi < *e.hi());
        // x - 1 itself has nothing above 1
        assert!(matches!(
            largest_root_enclosure(&p(&[1, -1]), &parse_rational("1e-6").unwrap()),
            Err(Error::NoSignChange(_))
        ));
    }

    #[test]
    fn table2_g16_has_p1_negative() {
        // eval(1) = 1 - 1 - 1 - 1 + 1 = -1, so the ordinary branch applies
        let mut c = vec![0i64; 17];
        c[0] = 1;
        c[7] = -1;
        c[8] = -1;
        c[9] = -1;
        c[16] = 1;
        let q = IntPoly::from_ascending(c);
        assert_eq!(q.eval(&rat_int(1)), rat_int(-1));
        let e = largest_root_enclosure(&q, &parse_rational("1e-8").unwrap()).unwrap();
        let lam = parse_rational("1.12876").unwrap();
        assert!((e.midpoint() - lam).abs() < parse_rational("1e-4").unwrap());
    }

    #[test]
    fn compare_orders_roots() {
        let mut a = enclose(&[1, -1, -1, -1], "1e-3"); // 1.83929
        let mut b = enclose(&[1, -1, -1, 1, -1], "1e-3"); // 1.51288
        assert_eq!(compare(&mut a, &mut b), Comparison::Greater);
        assert_eq!(compare(&mut b, &mut a), Comparison::Less);
    }

    #[test]
    fn compare_shared_root() {
        let mut a = enclose(&[1, -1, -1], "1e-3");
        let mut b = enclose(&[1, -1, -1], "1e-3");
        assert_eq!(compare(&mut a, &mut b), Comparison::SharedRoot);

        // x^8 - x^5 - x^3 - 1 and its quotient by x^2 + 1 share the real root
        let num = p(&[1, 0, 0, -1, 0, -1, 0, 0, -1]);
        let quot = num.exact_divide(&p(&[1, 0, 1])).unwrap();
        let tol = parse_rational("1e-3").unwrap();
        let mut ea = largest_root_enclosure(&num, &tol).unwrap();
        let mut eb = largest_root_enclosure(&quot, &tol).unwrap();
        assert_eq!(compare(&mut ea, &mut eb), Comparison::SharedRoot);
    }

    #[test]
    fn refine_preserves_invariants() {
        let mut e = enclose(&[1, 0, 0, -1, -1, -1, 0, 0, 1], "1e-2");
        for _ in 0..40 {
            e.bisect_step();
            assert!(e.invariants_hold());
        }
    }

    #[test]
    fn disk_counts() {
        // x^2 - x - 1: roots 1.618..., -0.618...
        let q = p(&[1, -1, -1]);
        assert_eq!(
            count_roots_in_disk_robust(&q, &rat(1, 2), true).unwrap(),
            0
        );
        assert_eq!(
            count_roots_in_disk_robust(&q, &rat(7, 10), true).unwrap(),
            1
        );
        assert_eq!(
            count_roots_in_disk_robust(&q, &rat_int(2), false).unwrap(),
            2
        );
        // x^3 - 2x - 1 has the root -1/phi at modulus exactly 0.618...
        let c = p(&[1, 0, -2, -1]);
        assert_eq!(
            count_roots_in_disk_robust(&c, &rat(61, 100), true).unwrap(),
            0
        );
        assert_eq!(
            count_roots_in_disk_robust(&c, &rat(63, 100), true).unwrap(),
            1
        );
        // roots at the origin are counted
        let z = p(&[1, -1, 0, 0]); // x^3 - x^2 = x^2 (x - 1)
        assert_eq!(
            count_roots_in_disk_robust(&z, &rat(1, 2), true).unwrap(),
            2
        );
    }

    #[test]
    fn profile_examples() {
        let prof = root_modulus_profile(&p(&[1, -3, 1])).unwrap();
        assert_eq!(prof.moduli.len(), 2);
        assert!((prof.moduli[0].0 - 2.618).abs() < 1e-3);
        assert!((prof.moduli[1].0 - 0.382).abs() < 1e-3);
        assert!(!prof.certified);
        let product: f64 = prof.moduli.iter().map(|(m, _)| m).product();
        assert!((product - 1.0).abs() < 1e-9);

        // x^6 - 1: all moduli 1
        let prof = root_modulus_profile(&p(&[1, 0, 0, 0, 0, 0, -1])).unwrap();
        assert!(prof.moduli.iter().all(|(m, _)| (m - 1.0).abs() < 1e-9));

        // x^3 - x^2 - x - 1: dominant 1.83929, others inside (1/lam, lam)
        let prof = root_modulus_profile(&p(&[1, -1, -1, -1])).unwrap();
        let lam = prof.moduli[0].0;
        assert!((lam - 1.83929).abs() < 1e-4);
        for (m, _) in &prof.moduli[1..] {
            assert!(*m < lam && *m > 1.0 / lam);
        }
    }
}
