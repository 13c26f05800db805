//! Weighted-graded sparse multivariate polynomials over cyclotomic
//! coefficients, exact division, a small Buchberger engine, and
//! quotient-ring monomial bases.

use crate::exact::CycloNum;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("not divisible")]
    NotDivisible,
    #[error("ring mismatch")]
    RingMismatch,
}

/// Exponent vector, one entry per ring variable.
pub type Mono = Vec<u32>;

/// A weighted polynomial ring: named variables with positive integer
/// weights. The monomial order is weighted-degree first, with a
/// graded-reverse-lexicographic tiebreak (a > b when the last nonzero
/// entry of a - b is negative).
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct RingSpec {
    pub vars: Vec<String>,
    pub weights: Vec<u64>,
}

impl RingSpec {
    pub fn new(vars: &[&str], weights: &[u64]) -> Arc<RingSpec> {
        assert_eq!(vars.len(), weights.len());
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let mut uniq = names.clone();
        uniq.sort();
        uniq.dedup();
        assert_eq!(uniq.len(), names.len(), "variable names must be unique");
        Arc::new(RingSpec {
            vars: names,
            weights: weights.to_vec(),
        })
    }

    /// The two-variable ring C[u,v] with weights (1,1).
    pub fn uv() -> Arc<RingSpec> {
        Self::new(&["u", "v"], &[1, 1])
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn mono_degree(&self, m: &Mono) -> u64 {
        m.iter()
            .zip(&self.weights)
            .map(|(&e, &w)| e as u64 * w)
            .sum()
    }

    /// Term order: weighted degree, then grevlex tiebreak.
    pub fn cmp_mono(&self, a: &Mono, b: &Mono) -> Ordering {
        let da = self.mono_degree(a);
        let db = self.mono_degree(b);
        match da.cmp(&db) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..a.len()).rev() {
            match a[i].cmp(&b[i]) {
                Ordering::Equal => {}
                // last nonzero of a-b negative means a > b
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

fn mono_divides(a: &Mono, b: &Mono) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn mono_sub(a: &Mono, b: &Mono) -> Mono {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn mono_lcm(a: &Mono, b: &Mono) -> Mono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// Sparse weighted-graded polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct WPoly {
    pub ring: Arc<RingSpec>,
    terms: BTreeMap<Mono, CycloNum>,
}

impl WPoly {
    pub fn zero(ring: &Arc<RingSpec>) -> WPoly {
        WPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<RingSpec>, c: CycloNum) -> WPoly {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(vec![0; ring.nvars()], c);
        }
        p
    }

    pub fn one(ring: &Arc<RingSpec>) -> WPoly {
        Self::constant(ring, CycloNum::one())
    }

    pub fn var(ring: &Arc<RingSpec>, i: usize) -> WPoly {
        let mut m = vec![0; ring.nvars()];
        m[i] = 1;
        Self::monomial(ring, m, CycloNum::one())
    }

    pub fn monomial(ring: &Arc<RingSpec>, m: Mono, c: CycloNum) -> WPoly {
        assert_eq!(m.len(), ring.nvars());
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(ring: &Arc<RingSpec>, terms: Vec<(Mono, CycloNum)>) -> WPoly {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &CycloNum)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> CycloNum {
        self.terms.get(m).cloned().unwrap_or_else(CycloNum::zero)
    }

    pub fn add_term(&mut self, m: Mono, c: CycloNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = &*e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    /// Leading term in the ring's order.
    pub fn leading(&self) -> Option<(&Mono, &CycloNum)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| self.ring.cmp_mono(a, b))
    }

    pub fn weighted_degree(&self) -> Option<u64> {
        self.terms
            .keys()
            .map(|m| self.ring.mono_degree(m))
            .max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| self.ring.mono_degree(m));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// The part of weighted degree d.
    pub fn homogeneous_component(&self, d: u64) -> WPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| self.ring.mono_degree(m) == d)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        WPoly {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &CycloNum) -> WPoly {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, v)| (m.clone(), v * c))
            .collect();
        WPoly {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn neg(&self) -> WPoly {
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), -v)).collect();
        WPoly {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn add(&self, other: &WPoly) -> WPoly {
        assert!(Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &WPoly) -> WPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &WPoly) -> WPoly {
        let mut out = Self::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_term(&self, m: &Mono, c: &CycloNum) -> WPoly {
        let terms = self
            .terms
            .iter()
            .map(|(mm, cc)| (mono_mul(mm, m), cc * c))
            .filter(|(_, cc)| !cc.is_zero())
            .collect();
        WPoly {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn pow(&self, k: u32) -> WPoly {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable i.
    pub fn partial(&self, i: usize) -> WPoly {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut mm = m.clone();
            mm[i] -= 1;
            out.add_term(mm, c.scale(&crate::exact::Rat::from_integer(m[i].into())));
        }
        out
    }

    /// Substitute each variable by the given image polynomial (all images
    /// in one common target ring).
    pub fn substitute(&self, images: &[WPoly]) -> WPoly {
        assert_eq!(images.len(), self.ring.nvars());
        let target = images
            .first()
            .map(|p| p.ring.clone())
            .expect("at least one variable");
        let mut out = WPoly::zero(&target);
        // cache powers of each image
        let mut powers: Vec<Vec<WPoly>> = images
            .iter()
            .map(|p| vec![WPoly::one(&target), p.clone()])
            .collect();
        for (m, c) in &self.terms {
            let mut term = WPoly::constant(&target, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let last = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(last);
                }
                term = term.mul(&powers[i][e as usize]);
            }
            out = out.add(&term);
        }
        out
    }

    /// Reinterpret in another ring with the same number of variables.
    pub fn rename(&self, ring: &Arc<RingSpec>) -> WPoly {
        assert_eq!(ring.nvars(), self.ring.nvars());
        WPoly {
            ring: ring.clone(),
            terms: self.terms.clone(),
        }
    }

    /// Make the leading coefficient 1.
    pub fn monic(&self) -> WPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }
}

impl fmt::Display for WPoly {
    /// Text format "coeff * x^a*y^b" terms joined by " + ", highest first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut monos: Vec<&Mono> = self.terms.keys().collect();
        monos.sort_by(|a, b| self.ring.cmp_mono(b, a));
        let mut parts = Vec::new();
        for m in monos {
            let c = &self.terms[m];
            let mut factors = Vec::new();
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.vars[i], e)),
                }
            }
            let cs = c.to_string();
            let coeff_str = if cs.contains(" + ") {
                format!("({})", cs)
            } else {
                cs
            };
            if factors.is_empty() {
                parts.push(coeff_str);
            } else if coeff_str == "1" {
                parts.push(factors.join("*"));
            } else {
                parts.push(format!("{}*{}", coeff_str, factors.join("*")));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl serde::Serialize for WPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A reduced, monic Groebner basis.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    pub ring: Arc<RingSpec>,
    pub generators: Vec<WPoly>,
}

/// Multivariate division: remainder of p modulo the divisors.
pub fn normal_form(p: &WPoly, basis: &GroebnerBasis) -> WPoly {
    reduce(p, &basis.generators)
}

fn reduce(p: &WPoly, divisors: &[WPoly]) -> WPoly {
    let ring = p.ring.clone();
    let leads: Vec<(Mono, CycloNum)> = divisors
        .iter()
        .map(|g| {
            let (m, c) = g.leading().expect("divisors nonzero");
            (m.clone(), c.clone())
        })
        .collect();
    let mut work = p.clone();
    let mut rem = WPoly::zero(&ring);
    while let Some((m, c)) = work.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let mut reduced = false;
        for (i, (lm, lc)) in leads.iter().enumerate() {
            if mono_divides(lm, &m) {
                let q = mono_sub(&m, lm);
                let factor = &c * &lc.inv().expect("nonzero");
                work = work.sub(&divisors[i].mul_term(&q, &factor));
                reduced = true;
                break;
            }
        }
        if !reduced {
            // move the irreducible leading term into the remainder
            work.add_term(m.clone(), -&c);
            rem.add_term(m, c);
        }
    }
    rem
}

/// Exact polynomial division: q with p = q * d, or NotDivisible.
pub fn exact_divide(p: &WPoly, d: &WPoly) -> Result<WPoly, PolyError> {
    assert!(!d.is_zero());
    let (dm, dc) = {
        let (m, c) = d.leading().unwrap();
        (m.clone(), c.clone())
    };
    let dc_inv = dc.inv().expect("nonzero");
    let mut work = p.clone();
    let mut quo = WPoly::zero(&p.ring);
    while let Some((m, c)) = work.leading().map(|(m, c)| (m.clone(), c.clone())) {
        if !mono_divides(&dm, &m) {
            return Err(PolyError::NotDivisible);
        }
        let qm = mono_sub(&m, &dm);
        let qc = &c * &dc_inv;
        work = work.sub(&d.mul_term(&qm, &qc));
        quo.add_term(qm, qc);
    }
    Ok(quo)
}

fn s_polynomial(f: &WPoly, g: &WPoly) -> WPoly {
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let l = mono_lcm(fm, gm);
    let a = f.mul_term(&mono_sub(&l, fm), &fc.inv().unwrap());
    let b = g.mul_term(&mono_sub(&l, gm), &gc.inv().unwrap());
    a.sub(&b)
}

/// Buchberger's algorithm with the normal selection strategy and the
/// coprimality and chain criteria; returns a reduced monic basis.
pub fn buchberger(gens: &[WPoly]) -> GroebnerBasis {
    let ring = gens
        .first()
        .map(|g| g.ring.clone())
        .expect("at least one generator");
    let mut basis: Vec<WPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.monic())
        .collect();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }
    let mut done: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    while !pairs.is_empty() {
        // normal selection: smallest lcm degree first
        pairs.sort_by(|&(a, b), &(c, d)| {
            let l1 = mono_lcm(basis[a].leading().unwrap().0, basis[b].leading().unwrap().0);
            let l2 = mono_lcm(basis[c].leading().unwrap().0, basis[d].leading().unwrap().0);
            ring.cmp_mono(&l2, &l1) // process smaller lcm first when popping from the back
        });
        let (i, j) = pairs.pop().unwrap();
        done.insert((i, j));
        let li = basis[i].leading().unwrap().0.clone();
        let lj = basis[j].leading().unwrap().0.clone();
        let l = mono_lcm(&li, &lj);
        // coprimality criterion
        if mono_mul(&li, &lj) == l {
            continue;
        }
        // chain criterion
        let mut skip = false;
        for k in 0..basis.len() {
            if k == i || k == j {
                continue;
            }
            let lk = basis[k].leading().unwrap().0;
            if mono_divides(lk, &l) {
                let p1 = (i.min(k), i.max(k));
                let p2 = (j.min(k), j.max(k));
                if done.contains(&p1) && done.contains(&p2) {
                    skip = true;
                    break;
                }
            }
        }
        if skip {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j]);
        let r = reduce(&s, &basis);
        if !r.is_zero() {
            let r = r.monic();
            let new = basis.len();
            for k in 0..new {
                pairs.push((k, new));
            }
            basis.push(r);
        }
    }
    // minimalize: drop generators whose leading monomial is divisible by another's
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let li = basis[i].leading().unwrap().0.clone();
        for j in 0..basis.len() {
            if i != j && keep[j] && mono_divides(basis[j].leading().unwrap().0, &li) {
                let lj = basis[j].leading().unwrap().0;
                if *lj == li && j > i {
                    continue; // equal leading monomials: keep the first
                }
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<WPoly> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();
    // interreduce tails
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<WPoly> = minimal
            .iter()
            .enumerate()
            .filter_map(|(j, g)| (j != i).then(|| g.clone()))
            .collect();
        let r = if others.is_empty() {
            minimal[i].clone()
        } else {
            reduce(&minimal[i], &others)
        };
        if !r.is_zero() {
            reduced.push(r.monic());
        }
    }
    reduced.sort_by(|a, b| ring.cmp_mono(a.leading().unwrap().0, b.leading().unwrap().0));
    GroebnerBasis {
        ring,
        generators: reduced,
    }
}

/// Re-verify the Groebner property: every S-polynomial reduces to zero.
pub fn verify_groebner(basis: &GroebnerBasis) -> bool {
    let g = &basis.generators;
    for i in 0..g.len() {
        for j in 0..i {
            let s = s_polynomial(&g[i], &g[j]);
            if !reduce(&s, g).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Monomials of the quotient ring below the staircase, or Infinite.
#[derive(Debug, Clone, PartialEq)]
pub enum QuotientBasis {
    Finite(Vec<Mono>),
    Infinite,
}

pub fn quotient_basis(basis: &GroebnerBasis) -> QuotientBasis {
    let n = basis.ring.nvars();
    let leads: Vec<Mono> = basis
        .generators
        .iter()
        .map(|g| g.leading().unwrap().0.clone())
        .collect();
    if leads.iter().any(|m| m.iter().all(|&e| e == 0)) {
        return QuotientBasis::Finite(Vec::new()); // unit ideal
    }
    // finite dimension iff every variable has a pure power among the leads
    let mut bounds = vec![0u32; n];
    for i in 0..n {
        let mut best: Option<u32> = None;
        for m in &leads {
            if m[i] > 0 && (0..n).all(|j| j == i || m[j] == 0) {
                best = Some(best.map_or(m[i], |b| b.min(m[i])));
            }
        }
        match best {
            Some(b) => bounds[i] = b,
            None => return QuotientBasis::Infinite,
        }
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    loop {
        if !leads.iter().any(|m| mono_divides(m, &cur)) {
            out.push(cur.clone());
        }
        // increment odometer
        let mut i = 0;
        loop {
            if i == n {
                out.sort_by(|a, b| basis.ring.cmp_mono(a, b));
                return QuotientBasis::Finite(out);
            }
            cur[i] += 1;
            if cur[i] < bounds[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// All monomials of exact weighted degree d.
pub fn monomials_of_degree(ring: &Arc<RingSpec>, d: u64) -> Vec<Mono> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; ring.nvars()];
    fn go(ring: &RingSpec, i: usize, rem: u64, cur: &mut Mono, out: &mut Vec<Mono>) {
        if i == ring.nvars() {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if i == ring.nvars() - 1 {
            let w = ring.weights[i];
            if rem % w == 0 {
                cur[i] = (rem / w) as u32;
                out.push(cur.clone());
                cur[i] = 0;
            }
            return;
        }
        let w = ring.weights[i];
        let max = rem / w;
        for e in 0..=max {
            cur[i] = e as u32;
            go(ring, i + 1, rem - e * w, cur, out);
        }
        cur[i] = 0;
    }
    go(ring, 0, d, &mut cur, &mut out);
    out
}

/// Independent oracle: dimension of the degree-d piece of R/(gens) computed
/// by rank of the monomial multiplication matrix (gens homogeneous).
pub fn graded_quotient_dim_oracle(gens: &[WPoly], d: u64) -> usize {
    let ring = gens[0].ring.clone();
    let monos = monomials_of_degree(&ring, d);
    if monos.is_empty() {
        return 0;
    }
    let index: std::collections::HashMap<&Mono, usize> =
        monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows: Vec<Vec<CycloNum>> = Vec::new();
    for g in gens {
        let gd = g.weighted_degree().expect("nonzero generator");
        if gd > d {
            continue;
        }
        for m in monomials_of_degree(&ring, d - gd) {
            let prod = g.mul_term(&m, &CycloNum::one());
            let mut row = vec![CycloNum::zero(); monos.len()];
            for (mm, c) in prod.terms() {
                row[index[mm]] = c.clone();
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return monos.len();
    }
    let mat = crate::exact::ExactMatrix::from_rows(rows);
    monos.len() - mat.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rat;

    fn xyz(w: &[u64]) -> Arc<RingSpec> {
        RingSpec::new(&["x", "y", "z"], w)
    }

    fn ivar(ring: &Arc<RingSpec>, i: usize) -> WPoly {
        WPoly::var(ring, i)
    }

    #[test]
    fn principal_variable_ideal() {
        let r = xyz(&[2, 2, 2]);
        let gb = buchberger(&[ivar(&r, 0)]);
        assert_eq!(gb.generators.len(), 1);
        assert_eq!(gb.generators[0], ivar(&r, 0));
        let x2 = ivar(&r, 0).pow(2);
        assert!(normal_form(&x2, &gb).is_zero());
    }

    #[test]
    fn staircase_vs_rank_oracle() {
        // ideal (x^2 - yz, x), weights (2,2,2): equals (x, yz)
        let r = xyz(&[2, 2, 2]);
        let f = ivar(&r, 0).pow(2).sub(&ivar(&r, 1).mul(&ivar(&r, 2)));
        let gb = buchberger(&[f.clone(), ivar(&r, 0)]);
        assert!(verify_groebner(&gb));
        assert_eq!(quotient_basis(&gb), QuotientBasis::Infinite);
        // per-degree dimensions against the monomial-matrix rank oracle
        let gens = [f, ivar(&r, 0)];
        for d in (0..=12).step_by(2) {
            let oracle = graded_quotient_dim_oracle(&gens, d);
            // staircase count at degree d: monomials not divisible by any lead
            let leads: Vec<Mono> = gb
                .generators
                .iter()
                .map(|g| g.leading().unwrap().0.clone())
                .collect();
            let count = monomials_of_degree(&r, d)
                .into_iter()
                .filter(|m| !leads.iter().any(|l| mono_divides(l, m)))
                .count();
            assert_eq!(count, oracle, "degree {}", d);
        }
    }

    #[test]
    fn jacobian_of_x3_plus_yz() {
        // f = x^3 + yz, weights (2,3,3): Jacobian {3x^2, z, y} -> {x^2, y, z}
        let r = xyz(&[2, 3, 3]);
        let f = ivar(&r, 0).pow(3).add(&ivar(&r, 1).mul(&ivar(&r, 2)));
        let jac: Vec<WPoly> = (0..3).map(|i| f.partial(i)).collect();
        let gb = buchberger(&jac);
        let expected: Vec<WPoly> = vec![ivar(&r, 0).pow(2), ivar(&r, 1), ivar(&r, 2)];
        let mut got = gb.generators.clone();
        got.sort_by_key(|g| format!("{}", g));
        let mut exp = expected.clone();
        exp.sort_by_key(|g| format!("{}", g));
        assert_eq!(got, exp);
        // membership oracle
        assert!(normal_form(&ivar(&r, 0).pow(3), &gb).is_zero());
        assert_eq!(normal_form(&ivar(&r, 0), &gb), ivar(&r, 0));
        assert_eq!(
            quotient_basis(&gb),
            QuotientBasis::Finite(vec![vec![0, 0, 0], vec![1, 0, 0]])
        );
    }

    #[test]
    fn quotient_basis_xn_plus_yz() {
        for n in 2..=6u32 {
            let r = xyz(&[2, n as u64, n as u64]);
            let f = ivar(&r, 0).pow(n).add(&ivar(&r, 1).mul(&ivar(&r, 2)));
            let jac: Vec<WPoly> = (0..3).map(|i| f.partial(i)).collect();
            let gb = buchberger(&jac);
            match quotient_basis(&gb) {
                QuotientBasis::Finite(b) => {
                    assert_eq!(b.len(), (n - 1) as usize);
                    for (i, m) in b.iter().enumerate() {
                        assert_eq!(m, &vec![i as u32, 0, 0]);
                    }
                    // brute-force rank oracle per degree
                    for d in 0..=(2 * (n as u64 - 2)) {
                        let cnt = b.iter().filter(|m| r.mono_degree(m) == d).count();
                        assert_eq!(cnt, graded_quotient_dim_oracle(&jac, d));
                    }
                }
                QuotientBasis::Infinite => panic!("expected finite"),
            }
        }
    }

    #[test]
    fn ideal_y_z_is_infinite() {
        let r = xyz(&[2, 2, 2]);
        let gb = buchberger(&[ivar(&r, 1), ivar(&r, 2)]);
        assert_eq!(quotient_basis(&gb), QuotientBasis::Infinite);
    }

    #[test]
    fn exact_division() {
        let r = xyz(&[2, 2, 2]);
        let a = ivar(&r, 0).pow(2).sub(&ivar(&r, 1).mul(&ivar(&r, 2)));
        let b = ivar(&r, 0).pow(2).add(&ivar(&r, 1).mul(&ivar(&r, 2)));
        let p = a.mul(&b);
        assert_eq!(exact_divide(&p, &a).unwrap(), b);
        assert!(matches!(
            exact_divide(&ivar(&r, 0), &ivar(&r, 1)),
            Err(PolyError::NotDivisible)
        ));
        let z = WPoly::zero(&r);
        assert!(exact_divide(&z, &a).unwrap().is_zero());
    }

    #[test]
    fn euler_identity_weighted() {
        // w_x x g_x + w_y y g_y + w_z z g_z = d g for homogeneous g
        let r = xyz(&[2, 3, 3]);
        let g = ivar(&r, 0)
            .pow(3)
            .add(&ivar(&r, 1).mul(&ivar(&r, 2)).scale(&CycloNum::from_int(5)));
        assert!(g.is_homogeneous());
        let d = g.weighted_degree().unwrap();
        let mut lhs = WPoly::zero(&r);
        for i in 0..3 {
            let term = ivar(&r, i)
                .mul(&g.partial(i))
                .scale(&CycloNum::from_rat(Rat::from_integer(r.weights[i].into())));
            lhs = lhs.add(&term);
        }
        assert_eq!(lhs, g.scale(&CycloNum::from_rat(Rat::from_integer(d.into()))));
    }

    #[test]
    fn normal_form_idempotent_and_linear() {
        let r = xyz(&[2, 3, 3]);
        let f = ivar(&r, 0).pow(3).add(&ivar(&r, 1).mul(&ivar(&r, 2)));
        let gb = buchberger(&(0..3).map(|i| f.partial(i)).collect::<Vec<_>>());
        let p = ivar(&r, 0).pow(4).add(&ivar(&r, 1).pow(2));
        let q = ivar(&r, 0).mul(&ivar(&r, 2)).add(&ivar(&r, 0));
        let np = normal_form(&p, &gb);
        assert_eq!(normal_form(&np, &gb), np);
        let sum_nf = normal_form(&p.add(&q), &gb);
        assert_eq!(sum_nf, np.add(&normal_form(&q, &gb)));
    }

    #[test]
    fn substitution_and_display() {
        let r = xyz(&[2, 2, 2]);
        let uv = RingSpec::uv();
        let u = WPoly::var(&uv, 0);
        let v = WPoly::var(&uv, 1);
        let f = ivar(&r, 0).pow(2).sub(&ivar(&r, 1).mul(&ivar(&r, 2)));
        // x -> uv, y -> u^2, z -> v^2 gives (uv)^2 - u^2 v^2 = 0
        let img = f.substitute(&[u.mul(&v), u.pow(2), v.pow(2)]);
        assert!(img.is_zero());
        assert_eq!(format!("{}", f), "x^2 + -1*y*z");
    }
}
