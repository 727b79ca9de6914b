//! Nonnegative integer matrices and companion digraphs: the primitivity test
//! (strong connectivity + cycle gcd), the Wielandt powering oracle, entrywise
//! dominance, and exact Collatz–Wielandt spectral-radius brackets.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::IntPoly;

pub const WIELANDT_DIM_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonnegMatrix {
    dim: usize,
    entries: Vec<BigInt>, // row-major
}

impl NonnegMatrix {
    pub fn new(dim: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        if dim == 0 || rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidParameter(format!(
                "expected {dim}x{dim} entries"
            )));
        }
        let entries: Vec<BigInt> = rows.into_iter().flatten().collect();
        if entries.iter().any(|e| e.is_negative()) {
            return Err(Error::InvalidParameter("negative entry".into()));
        }
        Ok(NonnegMatrix { dim, entries })
    }

    pub fn from_rows_u64(rows: &[&[u64]]) -> Self {
        let dim = rows.len();
        NonnegMatrix::new(
            dim,
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
        .expect("square nonnegative rows")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(!v.is_negative());
        self.entries[i * self.dim + j] = v;
    }

    pub fn mul(&self, other: &NonnegMatrix) -> Result<NonnegMatrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let n = self.dim;
        let mut out = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out[i * n + j] += a * b;
                    }
                }
            }
        }
        Ok(NonnegMatrix {
            dim: n,
            entries: out,
        })
    }

    pub fn pow(&self, e: usize) -> NonnegMatrix {
        let n = self.dim;
        let mut acc = NonnegMatrix {
            dim: n,
            entries: (0..n * n)
                .map(|idx| {
                    if idx % (n + 1) == 0 {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect(),
        };
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same dim");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same dim");
            }
        }
        acc
    }

    pub fn mat_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        let n = self.dim;
        (0..n)
            .map(|i| {
                let mut s = BigInt::zero();
                for j in 0..n {
                    let a = self.get(i, j);
                    if !a.is_zero() {
                        s += a * &x[j];
                    }
                }
                s
            })
            .collect()
    }

    /// Adjacency lists of the positive-entry digraph.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .filter(|&j| !self.get(i, j).is_zero())
                    .collect()
            })
            .collect()
    }

    pub fn all_positive(&self) -> bool {
        self.entries.iter().all(|e| e.is_positive())
    }
}

impl Serialize for NonnegMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::{Error as _, SerializeStruct};
        let mut rows = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let mut row = Vec::with_capacity(self.dim);
            for j in 0..self.dim {
                row.push(
                    u64::try_from(self.get(i, j))
                        .map_err(|_| S::Error::custom("entry exceeds u64"))?,
                );
            }
            rows.push(row);
        }
        let mut st = s.serialize_struct("NonnegMatrix", 2)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("rows", &rows)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for NonnegMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Raw {
            dim: usize,
            rows: Vec<Vec<u64>>,
        }
        let raw = Raw::deserialize(d)?;
        NonnegMatrix::new(
            raw.dim,
            raw.rows
                .into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
        )
        .map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// The digraph of the transposed Frobenius companion matrix of
/// x^d - a_{d-1}x^{d-1} - ... - a_1 x - 1: superdiagonal ones plus a bottom
/// row (1, a_1, ..., a_{d-1}).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompanionDigraph {
    dim: usize,
    bottom_row: Vec<BigInt>,
}

impl CompanionDigraph {
    /// Builds the digraph from a monic polynomial with constant coefficient -1
    /// and all other non-leading coefficients <= 0.
    pub fn companion_of(p: &IntPoly) -> Result<CompanionDigraph> {
        if p.is_zero() || !p.is_monic() {
            return Err(Error::NotMonic(p.to_string()));
        }
        let d = p.degree();
        if d == 0 {
            return Err(Error::SignViolation("degree must be at least 1".into()));
        }
        if p.constant_coeff() != BigInt::from(-1) {
            return Err(Error::SignViolation(format!(
                "constant coefficient must be -1, got {} in {p}",
                p.constant_coeff()
            )));
        }
        let mut bottom_row = Vec::with_capacity(d);
        bottom_row.push(BigInt::one());
        for i in 1..d {
            let c = p.coeff(i);
            if c.is_positive() {
                return Err(Error::SignViolation(format!(
                    "coefficient of x^{i} must be nonpositive in {p}"
                )));
            }
            bottom_row.push(-c);
        }
        Ok(CompanionDigraph { dim: d, bottom_row })
    }

    pub fn from_bottom_row(bottom_row: Vec<BigInt>) -> Result<CompanionDigraph> {
        if bottom_row.is_empty() || !bottom_row[0].is_one() {
            return Err(Error::SignViolation(
                "bottom row must start with 1".into(),
            ));
        }
        if bottom_row.iter().any(|v| v.is_negative()) {
            return Err(Error::SignViolation("bottom row must be nonnegative".into()));
        }
        Ok(CompanionDigraph {
            dim: bottom_row.len(),
            bottom_row,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bottom_row(&self) -> &[BigInt] {
        &self.bottom_row
    }

    /// The characteristic polynomial x^d - a_{d-1}x^{d-1} - ... - a_1 x - 1.
    pub fn char_poly(&self) -> IntPoly {
        let mut coeffs: Vec<BigInt> = self.bottom_row.iter().map(|a| -a).collect();
        coeffs.push(BigInt::one());
        IntPoly::from_ascending(coeffs)
    }

    pub fn materialize(&self) -> NonnegMatrix {
        let d = self.dim;
        let mut entries = vec![BigInt::zero(); d * d];
        for i in 0..d.saturating_sub(1) {
            entries[i * d + i + 1] = BigInt::one();
        }
        for (j, a) in self.bottom_row.iter().enumerate() {
            entries[(d - 1) * d + j] = a.clone();
        }
        NonnegMatrix { dim: d, entries }
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let d = self.dim;
        let mut adj = vec![Vec::new(); d];
        for (i, row) in adj.iter_mut().enumerate().take(d.saturating_sub(1)) {
            row.push(i + 1);
        }
        for (j, a) in self.bottom_row.iter().enumerate() {
            if !a.is_zero() {
                adj[d - 1].push(j);
            }
        }
        adj
    }

    /// Cycle gcd in closed form: gcd({d} ∪ {d - j : bottom_row[j] ≠ 0, j ≥ 1}).
    /// Every cycle passes through the bottom vertex, so this equals the graph
    /// period computed by BFS layering.
    pub fn closed_form_cycle_gcd(&self) -> u64 {
        let d = self.dim as u64;
        let mut g = d;
        for (j, a) in self.bottom_row.iter().enumerate().skip(1) {
            if !a.is_zero() {
                g = g.gcd(&(d - j as u64));
            }
        }
        g
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitivityReport {
    pub strongly_connected: bool,
    /// gcd of cycle lengths; None when not strongly connected or acyclic.
    pub cycle_gcd: Option<u64>,
    pub primitive: bool,
}

/// Tarjan strongly-connected components over adjacency lists.
fn tarjan_scc(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    struct State<'a> {
        adj: &'a [Vec<usize>],
        index: usize,
        idx: Vec<Option<usize>>,
        low: Vec<usize>,
        stack: Vec<usize>,
        on_stack: Vec<bool>,
        comps: Vec<Vec<usize>>,
    }
    fn connect(v: usize, st: &mut State) {
        st.idx[v] = Some(st.index);
        st.low[v] = st.index;
        st.index += 1;
        st.stack.push(v);
        st.on_stack[v] = true;
        for &w in &st.adj[v] {
            if st.idx[w].is_none() {
                connect(w, st);
                st.low[v] = st.low[v].min(st.low[w]);
            } else if st.on_stack[w] {
                st.low[v] = st.low[v].min(st.idx[w].unwrap());
            }
        }
        if st.low[v] == st.idx[v].unwrap() {
            let mut comp = Vec::new();
            loop {
                let w = st.stack.pop().unwrap();
                st.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            st.comps.push(comp);
        }
    }
    let n = adj.len();
    let mut st = State {
        adj,
        index: 0,
        idx: vec![None; n],
        low: vec![0; n],
        stack: Vec::new(),
        on_stack: vec![false; n],
        comps: Vec::new(),
    };
    for v in 0..n {
        if st.idx[v].is_none() {
            connect(v, &mut st);
        }
    }
    st.comps
}

/// Cycle gcd of a strongly connected digraph via BFS layering from vertex 0:
/// gcd over all edges u->v of |level(u) + 1 - level(v)|; 0 when acyclic
/// (single vertex without a self-loop).
fn bfs_layer_gcd(adj: &[Vec<usize>]) -> u64 {
    let n = adj.len();
    let mut level = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    level[0] = 0;
    queue.push_back(0);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if level[v] == usize::MAX {
                level[v] = level[u] + 1;
                queue.push_back(v);
            }
        }
    }
    let mut g: u64 = 0;
    for u in 0..n {
        for &v in &adj[u] {
            let diff = (level[u] as i64 + 1 - level[v] as i64).unsigned_abs();
            g = g.gcd(&diff);
        }
    }
    g
}

pub fn is_primitive_adjacency(adj: &[Vec<usize>]) -> PrimitivityReport {
    let n = adj.len();
    let comps = tarjan_scc(adj);
    let strongly_connected = comps.len() == 1 && comps[0].len() == n;
    if !strongly_connected {
        return PrimitivityReport {
            strongly_connected: false,
            cycle_gcd: None,
            primitive: false,
        };
    }
    let g = bfs_layer_gcd(adj);
    PrimitivityReport {
        strongly_connected: true,
        cycle_gcd: if g == 0 { None } else { Some(g) },
        primitive: g == 1,
    }
}

pub fn is_primitive_matrix(m: &NonnegMatrix) -> PrimitivityReport {
    is_primitive_adjacency(&m.adjacency())
}

pub fn is_primitive_digraph(g: &CompanionDigraph) -> PrimitivityReport {
    is_primitive_adjacency(&g.adjacency())
}

/// Independent primitivity oracle: m is primitive iff m^((d-1)^2 + 1) is
/// entrywise positive (Wielandt's bound). Exact powering; capped dimension.
pub fn wielandt_oracle(m: &NonnegMatrix) -> Result<bool> {
    let d = m.dim();
    if d > WIELANDT_DIM_CAP {
        return Err(Error::DimensionTooLarge(d, WIELANDT_DIM_CAP));
    }
    let e = (d - 1) * (d - 1) + 1;
    Ok(m.pow(e).all_positive())
}

/// Entrywise >= with at least one strict entry.
pub fn dominates(t: &NonnegMatrix, l: &NonnegMatrix) -> Result<bool> {
    if t.dim() != l.dim() {
        return Err(Error::DimensionMismatch(t.dim(), l.dim()));
    }
    let mut strict = false;
    for (a, b) in t.entries.iter().zip(l.entries.iter()) {
        match a.cmp(b) {
            std::cmp::Ordering::Less => return Ok(false),
            std::cmp::Ordering::Greater => strict = true,
            std::cmp::Ordering::Equal => {}
        }
    }
    Ok(strict)
}

/// Iteration state for Collatz–Wielandt refinement: keeps x = m^t · 1.
#[derive(Debug, Clone)]
pub struct CollatzWielandt {
    matrix: NonnegMatrix,
    x: Vec<BigInt>,
}

impl CollatzWielandt {
    pub fn new(m: &NonnegMatrix) -> Result<Self> {
        if !is_primitive_matrix(m).primitive {
            return Err(Error::NotPrimitive);
        }
        Ok(CollatzWielandt {
            matrix: m.clone(),
            x: vec![BigInt::one(); m.dim()],
        })
    }

    pub fn step(&mut self) {
        self.x = self.matrix.mat_vec(&self.x);
    }

    /// (min_i (mx)_i/x_i, max_i (mx)_i/x_i); zero coordinates are skipped
    /// (primitivity keeps x strictly positive from the all-ones start, so the
    /// skip never triggers in valid use).
    pub fn bounds(&self) -> (BigRational, BigRational) {
        let y = self.matrix.mat_vec(&self.x);
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for (yi, xi) in y.iter().zip(self.x.iter()) {
            if xi.is_zero() {
                continue;
            }
            let r = BigRational::new(yi.clone(), xi.clone());
            if lo.as_ref().is_none_or(|l| r < *l) {
                lo = Some(r.clone());
            }
            if hi.as_ref().is_none_or(|h| r > *h) {
                hi = Some(r);
            }
        }
        let lo = lo.expect("positive iterate");
        let hi = hi.expect("positive iterate");
        (lo, hi)
    }
}

/// min/max ratio bracket around the spectral radius after `iterations` steps
/// of exact power iteration from the all-ones vector.
pub fn collatz_wielandt_bounds(
    m: &NonnegMatrix,
    iterations: usize,
) -> Result<(BigRational, BigRational)> {
    let mut cw = CollatzWielandt::new(m)?;
    for _ in 0..iterations {
        cw.step();
    }
    Ok(cw.bounds())
}

/// Refines both brackets until the lower bound of `t` strictly exceeds the
/// upper bound of `l`; returns the number of iterations used.
pub fn separate_spectral_radii(
    t: &NonnegMatrix,
    l: &NonnegMatrix,
    cap: usize,
) -> Result<usize> {
    let mut cwt = CollatzWielandt::new(t)?;
    let mut cwl = CollatzWielandt::new(l)?;
    for iter in 0..=cap {
        let (lo_t, _) = cwt.bounds();
        let (_, hi_l) = cwl.bounds();
        if lo_t > hi_l {
            return Ok(iter);
        }
        cwt.step();
        cwl.step();
    }
    Err(Error::Undecided(format!(
        "spectral radii not separated within {cap} iterations"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn poly(desc: &[i64]) -> IntPoly {
        IntPoly::from_descending(desc.to_vec())
    }

    #[test]
    fn companion_shapes() {
        let g = CompanionDigraph::companion_of(&poly(&[1, -1, -1, -1])).unwrap();
        assert_eq!(g.dim(), 3);
        assert_eq!(
            g.bottom_row(),
            &[BigInt::from(1), BigInt::from(1), BigInt::from(1)]
        );
        assert_eq!(g.char_poly(), poly(&[1, -1, -1, -1]));
        let m = g.materialize();
        assert_eq!(m.get(0, 1), &BigInt::from(1));
        assert_eq!(m.get(1, 2), &BigInt::from(1));
        assert_eq!(m.get(2, 0), &BigInt::from(1));
        assert_eq!(m.get(0, 0), &BigInt::from(0));

        // x^d - 1 is a cyclic permutation digraph
        let c = CompanionDigraph::companion_of(&poly(&[1, 0, 0, 0, -1])).unwrap();
        assert_eq!(c.bottom_row()[0], BigInt::one());
        assert!(c.bottom_row()[1..].iter().all(|v| v.is_zero()));

        // constant +1 violates the class shape
        assert!(matches!(
            CompanionDigraph::companion_of(&poly(&[1, -3, 1])),
            Err(Error::SignViolation(_))
        ));
        assert!(matches!(
            CompanionDigraph::companion_of(&poly(&[1, 1, 0, -1])),
            Err(Error::SignViolation(_))
        ));
    }

    #[test]
    fn primitivity_examples() {
        let r = is_primitive_digraph(
            &CompanionDigraph::companion_of(&poly(&[1, -1, -1, -1])).unwrap(),
        );
        assert!(r.strongly_connected && r.cycle_gcd == Some(1) && r.primitive);

        let r = is_primitive_digraph(&CompanionDigraph::companion_of(&poly(&[1, 0, 0, -1])).unwrap());
        assert_eq!(r.cycle_gcd, Some(3));
        assert!(!r.primitive);

        let r = is_primitive_digraph(
            &CompanionDigraph::companion_of(&poly(&[1, 0, -1, 0, -1])).unwrap(),
        );
        assert_eq!(r.cycle_gcd, Some(2));
        assert!(!r.primitive);

        // non strongly connected matrix
        let m = NonnegMatrix::from_rows_u64(&[&[1, 1], &[0, 1]]);
        let r = is_primitive_matrix(&m);
        assert!(!r.strongly_connected && r.cycle_gcd.is_none() && !r.primitive);

        // 1x1 without self loop: trivially strongly connected, no cycles
        let m = NonnegMatrix::from_rows_u64(&[&[0]]);
        let r = is_primitive_matrix(&m);
        assert!(r.strongly_connected && r.cycle_gcd.is_none() && !r.primitive);
    }

    #[test]
    fn closed_form_gcd_matches_bfs() {
        for desc in [
            vec![1i64, -1, -1, -1],
            vec![1, 0, 0, -1],
            vec![1, 0, -1, 0, -1],
            vec![1, 0, -2, -1],
            vec![1, 0, 0, -1, 0, 0, -1],
        ] {
            let g = CompanionDigraph::companion_of(&poly(&desc)).unwrap();
            let closed = g.closed_form_cycle_gcd();
            let report = is_primitive_digraph(&g);
            assert_eq!(report.cycle_gcd, Some(closed), "poly {:?}", desc);
        }
    }

    #[test]
    fn wielandt_examples() {
        let m = CompanionDigraph::companion_of(&poly(&[1, -1, -1, -1]))
            .unwrap()
            .materialize();
        assert!(wielandt_oracle(&m).unwrap());
        let cyc = CompanionDigraph::companion_of(&poly(&[1, 0, 0, -1]))
            .unwrap()
            .materialize();
        assert!(!wielandt_oracle(&cyc).unwrap());
        let one = NonnegMatrix::from_rows_u64(&[&[2]]);
        assert!(wielandt_oracle(&one).unwrap());
        let big = NonnegMatrix::new(
            65,
            vec![vec![BigInt::one(); 65]; 65],
        )
        .unwrap();
        assert!(matches!(
            wielandt_oracle(&big),
            Err(Error::DimensionTooLarge(65, 64))
        ));
    }

    #[test]
    fn dominance_examples() {
        let t = CompanionDigraph::from_bottom_row(vec![
            BigInt::one(),
            BigInt::one(),
            BigInt::one(),
        ])
        .unwrap()
        .materialize();
        let l = CompanionDigraph::from_bottom_row(vec![
            BigInt::one(),
            BigInt::one(),
            BigInt::zero(),
        ])
        .unwrap()
        .materialize();
        assert!(dominates(&t, &l).unwrap());
        assert!(!dominates(&t, &t).unwrap());
        let incomparable = CompanionDigraph::from_bottom_row(vec![
            BigInt::one(),
            BigInt::zero(),
            BigInt::from(2),
        ])
        .unwrap()
        .materialize();
        assert!(!dominates(&incomparable, &t).unwrap());
        assert!(!dominates(&t, &incomparable).unwrap());
    }

    #[test]
    fn collatz_wielandt_brackets() {
        // golden ratio companion: bracket must contain 1.61803...
        let m = CompanionDigraph::companion_of(&poly(&[1, -1, -1]))
            .unwrap()
            .materialize();
        let (lo, hi) = collatz_wielandt_bounds(&m, 40).unwrap();
        let phi_lo = rat(161803, 100000);
        let phi_hi = rat(161804, 100000);
        assert!(lo <= phi_hi && hi >= phi_lo);
        assert!(lo <= hi);

        let one = NonnegMatrix::from_rows_u64(&[&[3]]);
        let (lo, hi) = collatz_wielandt_bounds(&one, 0).unwrap();
        assert_eq!(lo, rat_int(3));
        assert_eq!(hi, rat_int(3));

        let m3 = CompanionDigraph::companion_of(&poly(&[1, -1, -1, -1]))
            .unwrap()
            .materialize();
        let (lo, hi) = collatz_wielandt_bounds(&m3, 60).unwrap();
        let target = rat(183929, 100000);
        assert!(lo < target && target < hi || (hi.clone() - lo.clone()) < rat(1, 1000));

        let cyc = CompanionDigraph::companion_of(&poly(&[1, 0, 0, -1]))
            .unwrap()
            .materialize();
        assert!(matches!(
            collatz_wielandt_bounds(&cyc, 5),
            Err(Error::NotPrimitive)
        ));
    }

    #[test]
    fn bracket_non_widening() {
        let m = CompanionDigraph::companion_of(&poly(&[1, 0, -1, -1, 0, -1]))
            .unwrap()
            .materialize();
        let mut prev: Option<(BigRational, BigRational)> = None;
        for t in 0..20 {
            let b = collatz_wielandt_bounds(&m, t).unwrap();
            if let Some((plo, phi)) = prev {
                assert!(b.0 >= plo, "lower bound regressed at t={t}");
                assert!(b.1 <= phi, "upper bound widened at t={t}");
            }
            prev = Some(b);
        }
    }

    #[test]
    fn perron_separation() {
        let t = CompanionDigraph::companion_of(&poly(&[1, -1, -1, -1]))
            .unwrap()
            .materialize();
        let l = CompanionDigraph::companion_of(&poly(&[1, -1, 0, -1]))
            .unwrap()
            .materialize();
        assert!(dominates(&t, &l).unwrap());
        let iters = separate_spectral_radii(&t, &l, 500).unwrap();
        assert!(iters < 100);

        let a = NonnegMatrix::from_rows_u64(&[&[3]]);
        let b = NonnegMatrix::from_rows_u64(&[&[2]]);
        assert!(dominates(&a, &b).unwrap());
        assert_eq!(separate_spectral_radii(&a, &b, 10).unwrap(), 0);
    }

    #[test]
    fn matrix_serde() {
        let m = NonnegMatrix::from_rows_u64(&[&[0, 1], &[1, 1]]);
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"{"dim":2,"rows":[[0,1],[1,1]]}"#);
        let back: NonnegMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
    }
}
