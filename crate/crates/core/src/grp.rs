//! Finite subgroups of SL(2,C) as exact matrix groups: enumeration,
//! conjugacy classes, character tables, Reynolds averaging, and
//! normal-pair structure.
//!
//! Action convention, used consistently everywhere: g acts on the span of
//! (u, v) by (g.u, g.v) = (u, v) * g, i.e. for g = [[a,b],[c,d]] we have
//! g.u = a*u + c*v and g.v = b*u + d*v.

use crate::exact::{CycloNum, ExactMatrix, Rat};
use crate::poly::{RingSpec, WPoly};
use num::{One, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("not a subgroup")]
    NotSubgroup,
    #[error("not normal")]
    NotNormal,
    #[error("unknown group spec: {0}")]
    UnknownSpec(String),
}

/// One of the five families of finite SL(2,C) subgroups.
/// BinaryDihedral(n) has order 4n; 2T/2O/2I have orders 24/48/120.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum GroupSpec {
    Cyclic(u64),
    BinaryDihedral(u64),
    BinaryTetrahedral,
    BinaryOctahedral,
    BinaryIcosahedral,
}

impl GroupSpec {
    pub fn order(&self) -> u64 {
        match self {
            GroupSpec::Cyclic(n) => *n,
            GroupSpec::BinaryDihedral(n) => 4 * n,
            GroupSpec::BinaryTetrahedral => 24,
            GroupSpec::BinaryOctahedral => 48,
            GroupSpec::BinaryIcosahedral => 120,
        }
    }

    /// Parse "C4", "BD2", "2T", "2O", "2I".
    pub fn parse(s: &str) -> Result<GroupSpec, GroupError> {
        let t = s.trim();
        if let Some(n) = t.strip_prefix('C').and_then(|x| x.parse::<u64>().ok()) {
            if n >= 1 {
                return Ok(GroupSpec::Cyclic(n));
            }
        }
        if let Some(n) = t.strip_prefix("BD").and_then(|x| x.parse::<u64>().ok()) {
            if n >= 1 {
                return Ok(GroupSpec::BinaryDihedral(n));
            }
        }
        match t {
            "2T" => return Ok(GroupSpec::BinaryTetrahedral),
            "2O" => return Ok(GroupSpec::BinaryOctahedral),
            "2I" => return Ok(GroupSpec::BinaryIcosahedral),
            _ => {}
        }
        Err(GroupError::UnknownSpec(s.to_string()))
    }

    fn conductor(&self) -> u64 {
        match self {
            GroupSpec::Cyclic(n) => *n,
            GroupSpec::BinaryDihedral(n) => 2 * n,
            GroupSpec::BinaryTetrahedral | GroupSpec::BinaryOctahedral => 8,
            GroupSpec::BinaryIcosahedral => 5,
        }
    }

    fn generators(&self) -> Vec<Mat2> {
        let zero = CycloNum::zero;
        let one = CycloNum::one;
        match self {
            GroupSpec::Cyclic(n) => {
                vec![[
                    CycloNum::zeta(*n),
                    zero(),
                    zero(),
                    CycloNum::zeta_pow(*n, -1),
                ]]
            }
            GroupSpec::BinaryDihedral(n) => vec![
                [
                    CycloNum::zeta(2 * n),
                    zero(),
                    zero(),
                    CycloNum::zeta_pow(2 * n, -1),
                ],
                [zero(), one(), -one(), zero()],
            ],
            GroupSpec::BinaryTetrahedral => {
                let i = CycloNum::zeta(4);
                let h = CycloNum::ratio(1, 2);
                // quaternions i and omega = (-1 + i + j + k)/2
                vec![
                    [i.clone(), zero(), zero(), -&i],
                    [
                        &(&i - &one()) * &h,
                        &(&i + &one()) * &h,
                        &(&i - &one()) * &h,
                        &(-&(&i + &one())) * &h,
                    ],
                ]
            }
            GroupSpec::BinaryOctahedral => {
                let mut gens = GroupSpec::BinaryTetrahedral.generators();
                // quaternion (1 + i)/sqrt(2) = diag(zeta_8, zeta_8^-1)
                gens.push([
                    CycloNum::zeta(8),
                    zero(),
                    zero(),
                    CycloNum::zeta_pow(8, -1),
                ]);
                gens
            }
            GroupSpec::BinaryIcosahedral => {
                let z = CycloNum::zeta(5);
                let s = &z + &z.pow(4); // 2 cos(2 pi / 5)
                let d = (&z.pow(2) - &z.pow(3)).inv().unwrap();
                vec![
                    [z.pow(3), zero(), zero(), z.pow(2)],
                    [&s * &d, d.clone(), d.clone(), &(-&s) * &d],
                ]
            }
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{}", n),
            GroupSpec::BinaryDihedral(n) => write!(f, "BD{}", n),
            GroupSpec::BinaryTetrahedral => write!(f, "2T"),
            GroupSpec::BinaryOctahedral => write!(f, "2O"),
            GroupSpec::BinaryIcosahedral => write!(f, "2I"),
        }
    }
}

/// 2x2 matrix, row-major: [a, b, c, d] = [[a, b], [c, d]].
pub type Mat2 = [CycloNum; 4];

fn mat_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    [
        &(&x[0] * &y[0]) + &(&x[1] * &y[2]),
        &(&x[0] * &y[1]) + &(&x[1] * &y[3]),
        &(&x[2] * &y[0]) + &(&x[3] * &y[2]),
        &(&x[2] * &y[1]) + &(&x[3] * &y[3]),
    ]
}

fn mat_det(x: &Mat2) -> CycloNum {
    &(&x[0] * &x[3]) - &(&x[1] * &x[2])
}

fn mat_key(x: &Mat2, conductor: u64) -> String {
    let parts: Vec<String> = x.iter().map(|e| e.embed(conductor).to_string()).collect();
    parts.join(";")
}

/// A fully enumerated finite SL(2,C) subgroup with classes and exact
/// character table (row 0 = trivial character).
#[derive(Debug)]
pub struct FinSL2Group {
    pub spec: GroupSpec,
    pub conductor: u64,
    pub elements: Vec<Mat2>,
    pub mult_table: Vec<Vec<usize>>,
    pub inverse: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    /// char_table[i][k] = chi_i on class k.
    pub char_table: Vec<Vec<CycloNum>>,
    pub degrees: Vec<u64>,
    /// trace(g) per class (the tautological 2-dimensional character).
    pub taut_values: Vec<CycloNum>,
}

impl FinSL2Group {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_size(&self, k: usize) -> usize {
        self.classes[k].len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Index of the class containing the inverses of class k's elements.
    pub fn inverse_class(&self, k: usize) -> usize {
        self.class_of[self.inverse[self.classes[k][0]]]
    }

    pub fn element_order(&self, mut g: usize) -> u64 {
        let mut n = 1;
        let start = g;
        while g != 0 {
            g = self.mult_table[g][start];
            n += 1;
        }
        n
    }

    /// Apply g to a polynomial in the (u, v) ring.
    pub fn act_uv(&self, g: usize, p: &WPoly) -> WPoly {
        let m = &self.elements[g];
        let ring = p.ring.clone();
        let u = WPoly::var(&ring, 0);
        let v = WPoly::var(&ring, 1);
        let gu = u.scale(&m[0]).add(&v.scale(&m[2]));
        let gv = u.scale(&m[1]).add(&v.scale(&m[3]));
        p.substitute(&[gu, gv])
    }

    /// Reynolds operator: average of the G-orbit of p.
    pub fn reynolds(&self, p: &WPoly) -> WPoly {
        let mut acc = WPoly::zero(&p.ring);
        for g in 0..self.order() {
            acc = acc.add(&self.act_uv(g, p));
        }
        acc.scale(&CycloNum::from_rat(Rat::new(
            1.into(),
            (self.order() as i64).into(),
        )))
    }

    /// A small generating set, found greedily through the multiplication
    /// table.
    pub fn generators(&self) -> Vec<usize> {
        let n = self.order();
        let mut gens = Vec::new();
        let mut sub = vec![false; n];
        sub[self.identity()] = true;
        let mut size = 1;
        while size < n {
            let next = (0..n).find(|&g| !sub[g]).unwrap();
            gens.push(next);
            let mut stack = vec![next];
            sub[next] = true;
            size += 1;
            while let Some(x) = stack.pop() {
                for y in 0..n {
                    if !sub[y] {
                        continue;
                    }
                    for z in [self.mult_table[x][y], self.mult_table[y][x]] {
                        if !sub[z] {
                            sub[z] = true;
                            size += 1;
                            stack.push(z);
                        }
                    }
                }
            }
        }
        gens
    }

    /// Images of all degree-d monomials under element g, sharing one
    /// power table of the linear images of u and v.
    fn monomial_images(&self, g: usize, d: u64) -> Vec<WPoly> {
        let ring = RingSpec::uv();
        let m = &self.elements[g];
        let u = WPoly::var(&ring, 0);
        let v = WPoly::var(&ring, 1);
        let gu = u.scale(&m[0]).add(&v.scale(&m[2]));
        let gv = u.scale(&m[1]).add(&v.scale(&m[3]));
        let table = |p: &WPoly| {
            let mut t = vec![WPoly::one(&ring)];
            for i in 1..=d as usize {
                t.push(t[i - 1].mul(p));
            }
            t
        };
        let (pu, pv) = (table(&gu), table(&gv));
        // matches the monomials_of_degree order (u^d, u^{d-1} v, ..., v^d)
        crate::poly::monomials_of_degree(&ring, d)
            .into_iter()
            .map(|mono| pu[mono[0] as usize].mul(&pv[mono[1] as usize]))
            .collect()
    }

    /// Basis (row echelon, monic) of the invariant subspace of degree d,
    /// computed as the common fixed space of a generating set.
    pub fn invariant_basis(&self, d: u64) -> Vec<WPoly> {
        let ring = RingSpec::uv();
        let monos = crate::poly::monomials_of_degree(&ring, d);
        let gens = self.generators();
        if gens.is_empty() {
            return monos
                .iter()
                .map(|m| WPoly::monomial(&ring, m.clone(), CycloNum::one()))
                .collect();
        }
        let mut rows: Vec<Vec<CycloNum>> = Vec::new();
        for &g in &gens {
            let images = self.monomial_images(g, d);
            for (i, mono) in monos.iter().enumerate() {
                let mut row: Vec<CycloNum> =
                    images.iter().map(|img| img.coeff(mono)).collect();
                row[i] = &row[i] - &CycloNum::one();
                rows.push(row);
            }
        }
        let a = ExactMatrix::from_rows(rows);
        let polys: Vec<WPoly> = a
            .kernel()
            .into_iter()
            .map(|v| {
                WPoly::from_terms(
                    &ring,
                    monos
                        .iter()
                        .cloned()
                        .zip(v)
                        .filter(|(_, c)| !c.is_zero())
                        .collect(),
                )
            })
            .collect();
        echelonize(polys)
    }

    /// Molien series coefficients up to degree max_d (inclusive): the
    /// dimension of the invariant subspace per degree, computed from the
    /// exact series (1/|G|) sum_g 1/det(1 - t g).
    pub fn molien(&self, max_d: usize) -> Vec<u64> {
        let mut total = vec![CycloNum::zero(); max_d + 1];
        for g in 0..self.order() {
            let m = &self.elements[g];
            let tr = &m[0] + &m[3];
            // 1/(1 - tr t + t^2) = sum s_k t^k, s_k = tr s_{k-1} - s_{k-2}
            let mut s_prev = CycloNum::zero();
            let mut s = CycloNum::one();
            for item in total.iter_mut() {
                *item += &s;
                let next = &(&tr * &s) - &s_prev;
                s_prev = s;
                s = next;
            }
        }
        let inv = CycloNum::from_rat(Rat::new(1.into(), (self.order() as i64).into()));
        total
            .into_iter()
            .map(|c| {
                let r = (&c * &inv)
                    .as_rational()
                    .expect("Molien coefficients are rational");
                assert!(r.denom().is_one(), "Molien coefficients are integers");
                let n = r.numer();
                assert!(n >= &num::BigInt::zero());
                u64::try_from(n).unwrap()
            })
            .collect()
    }

    pub fn key_map(&self, conductor: u64) -> HashMap<String, usize> {
        self.elements
            .iter()
            .enumerate()
            .map(|(i, m)| (mat_key(m, conductor), i))
            .collect()
    }
}

/// Row-echelon reduce a list of polynomials (as vectors over their
/// monomial support); returns a monic triangular basis of the span.
pub fn echelonize(polys: Vec<WPoly>) -> Vec<WPoly> {
    let mut basis: Vec<WPoly> = Vec::new();
    for mut p in polys {
        loop {
            if p.is_zero() {
                break;
            }
            let (lm, lc) = {
                let (m, c) = p.leading().unwrap();
                (m.clone(), c.clone())
            };
            if let Some(b) = basis
                .iter()
                .find(|b| b.leading().map(|(m, _)| m) == Some(&lm))
            {
                p = p.sub(&b.scale(&lc));
            } else {
                basis.push(p.scale(&lc.inv().unwrap()));
                break;
            }
        }
    }
    basis.sort_by(|a, b| {
        let ra = a.leading().unwrap().0;
        let rb = b.leading().unwrap().0;
        a.ring.cmp_mono(rb, ra)
    });
    basis
}

/// Express p as a linear combination of the given polynomials (all in one
/// ring); returns coordinates or None.
pub fn express_in_span(p: &WPoly, span: &[WPoly]) -> Option<Vec<CycloNum>> {
    use crate::exact::{solve_linear, ExactMatrix, LinearSolution};
    // collect the union of supports
    let mut monos: Vec<crate::poly::Mono> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for q in span.iter().chain(std::iter::once(p)) {
        for (m, _) in q.terms() {
            if seen.insert(m.clone()) {
                monos.push(m.clone());
            }
        }
    }
    let rows = monos.len();
    let mut a = ExactMatrix::zero(rows, span.len());
    let mut b = vec![CycloNum::zero(); rows];
    for (r, m) in monos.iter().enumerate() {
        for (c, q) in span.iter().enumerate() {
            a.set(r, c, q.coeff(m));
        }
        b[r] = p.coeff(m);
    }
    match solve_linear(&a, &b) {
        LinearSolution::Solution { particular, .. } => Some(particular),
        LinearSolution::Inconsistent => None,
    }
}

pub fn build_group(spec: GroupSpec) -> Arc<FinSL2Group> {
    let conductor = spec.conductor().max(1);
    let gens: Vec<Mat2> = spec.generators();
    let identity: Mat2 = [
        CycloNum::one(),
        CycloNum::zero(),
        CycloNum::zero(),
        CycloNum::one(),
    ];
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<String, usize> = HashMap::new();
    index.insert(mat_key(&identity, conductor), 0);
    let mut queue = vec![0usize];
    while let Some(i) = queue.pop() {
        for g in &gens {
            let p = mat_mul(&elements[i], g);
            let key = mat_key(&p, conductor);
            if !index.contains_key(&key) {
                let id = elements.len();
                index.insert(key, id);
                elements.push(p);
                queue.push(id);
            }
        }
    }
    let n = elements.len();
    assert_eq!(
        n as u64,
        spec.order(),
        "group order must match the spec invariant"
    );
    for m in &elements {
        assert_eq!(mat_det(m), CycloNum::one(), "determinant 1");
    }
    let mut mult_table = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            let p = mat_mul(&elements[i], &elements[j]);
            mult_table[i][j] = index[&mat_key(&p, conductor)];
        }
    }
    let mut inverse = vec![0usize; n];
    for i in 0..n {
        inverse[i] = (0..n).find(|&j| mult_table[i][j] == 0).unwrap();
    }
    // conjugacy classes, identity class first
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if class_of[start] != usize::MAX {
            continue;
        }
        let k = classes.len();
        let mut orbit = vec![start];
        class_of[start] = k;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for g in 0..n {
                let y = mult_table[mult_table[g][x]][inverse[g]];
                if class_of[y] == usize::MAX {
                    class_of[y] = k;
                    orbit.push(y);
                    stack.push(y);
                }
            }
        }
        orbit.sort();
        classes.push(orbit);
    }
    let mut group = FinSL2Group {
        spec,
        conductor,
        elements,
        mult_table,
        inverse,
        classes,
        class_of,
        char_table: Vec::new(),
        degrees: Vec::new(),
        taut_values: Vec::new(),
    };
    let (table, degrees) = dixon::character_table(&group);
    group.char_table = table;
    group.degrees = degrees;
    group.taut_values = (0..group.num_classes())
        .map(|k| {
            let g = group.classes[k][0];
            let m = &group.elements[g];
            &m[0] + &m[3]
        })
        .collect();
    verify_character_table(&group);
    Arc::new(group)
}

/// Exact inner product of class functions: (1/|G|) sum |C_k| a_k conj(b_k).
pub fn char_inner(group: &FinSL2Group, a: &[CycloNum], b: &[CycloNum]) -> CycloNum {
    let mut acc = CycloNum::zero();
    for k in 0..group.num_classes() {
        let size = CycloNum::from_int(group.class_size(k) as i64);
        acc += &(&(&size * &a[k]) * &b[k].conj());
    }
    let inv = CycloNum::from_rat(Rat::new(1.into(), (group.order() as i64).into()));
    &acc * &inv
}

fn verify_character_table(group: &FinSL2Group) {
    let m = group.num_classes();
    assert_eq!(group.char_table.len(), m, "as many irreducibles as classes");
    // row 0 trivial
    assert!(group.char_table[0].iter().all(|c| *c == CycloNum::one()));
    // row orthogonality
    for i in 0..m {
        for j in 0..m {
            let expected = if i == j {
                CycloNum::one()
            } else {
                CycloNum::zero()
            };
            assert_eq!(
                char_inner(group, &group.char_table[i], &group.char_table[j]),
                expected,
                "row orthogonality ({}, {})",
                i,
                j
            );
        }
    }
    // column orthogonality
    for k in 0..m {
        for l in 0..m {
            let mut acc = CycloNum::zero();
            for i in 0..m {
                acc += &(&group.char_table[i][k] * &group.char_table[i][l].conj());
            }
            let expected = if k == l {
                CycloNum::from_rat(Rat::new(
                    (group.order() as i64).into(),
                    (group.class_size(k) as i64).into(),
                ))
            } else {
                CycloNum::zero()
            };
            assert_eq!(acc, expected, "column orthogonality ({}, {})", k, l);
        }
    }
    let sum_sq: u64 = group.degrees.iter().map(|d| d * d).sum();
    assert_eq!(sum_sq, group.order() as u64);
}

mod dixon {
    //! Character tables by the class-algebra (Dixon) method: split the
    //! common eigenvectors of the class-sum multiplication matrices over a
    //! prime field GF(p) with p = 1 mod exp(G), then lift the values to the
    //! cyclotomic field by a discrete Fourier transform over GF(p).

    use super::FinSL2Group;
    use crate::exact::CycloNum;

    fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1u64;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    }

    fn inv_mod(a: u64, p: u64) -> u64 {
        pow_mod(a, p - 2, p)
    }

    fn is_prime(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    /// Reduced row echelon form over GF(p); returns pivot columns.
    fn rref(m: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
        let rows = m.len();
        if rows == 0 {
            return Vec::new();
        }
        let cols = m[0].len();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(pr, r);
            let inv = inv_mod(m[r][c], p);
            for j in c..cols {
                m[r][j] = m[r][j] * inv % p;
            }
            for i in 0..rows {
                if i != r && m[i][c] != 0 {
                    let f = m[i][c];
                    for j in c..cols {
                        m[i][j] = (m[i][j] + (p - f) * m[r][j]) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn kernel(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
        if m.is_empty() {
            return Vec::new();
        }
        let cols = m[0].len();
        let mut w = m.to_vec();
        let pivots = rref(&mut w, p);
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut out = Vec::new();
        for free in 0..cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![0u64; cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - w[r][free]) % p;
            }
            out.push(v);
        }
        out
    }

    /// Solve M x = b over GF(p) (consistent by construction in our uses).
    fn solve(m: &[Vec<u64>], b: &[u64], p: u64) -> Vec<u64> {
        let rows = m.len();
        let cols = m[0].len();
        let mut aug: Vec<Vec<u64>> = (0..rows)
            .map(|i| {
                let mut row = m[i].clone();
                row.push(b[i]);
                row
            })
            .collect();
        let pivots = rref(&mut aug, p);
        assert!(pivots.last() != Some(&cols), "system must be consistent");
        let mut x = vec![0u64; cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[r][cols];
        }
        x
    }

    pub fn character_table(group: &FinSL2Group) -> (Vec<Vec<CycloNum>>, Vec<u64>) {
        let m = group.num_classes();
        let n = group.order() as u64;
        let exponent = (0..m)
            .map(|k| group.element_order(group.classes[k][0]))
            .fold(1u64, num::integer::lcm);
        // prime p = 1 mod exponent, large enough to pin down degrees
        let mut p = exponent + 1;
        let bound = 2 * (n as f64).sqrt() as u64 + 2;
        while !is_prime(p) || p <= bound {
            p += exponent;
        }

        // class multiplication coefficients a_{ijk}; N_i[j][k] = a_{ijk}
        let mut class_mats: Vec<Vec<Vec<u64>>> = vec![vec![vec![0; m]; m]; m];
        for i in 0..m {
            for j in 0..m {
                for &x in &group.classes[i] {
                    for &y in &group.classes[j] {
                        let k = group.class_of[group.mult_table[x][y]];
                        class_mats[i][j][k] += 1;
                    }
                }
                // a_{ijk} counts pairs mapping to a FIXED representative z_k,
                // so divide by |C_k|
                for k in 0..m {
                    let ck = group.class_size(k) as u64;
                    debug_assert!(class_mats[i][j][k] % ck == 0);
                    class_mats[i][j][k] = (class_mats[i][j][k] / ck) % p;
                }
            }
        }

        // split the class algebra into common eigenlines over GF(p)
        let mut subspaces: Vec<Vec<Vec<u64>>> = vec![(0..m)
            .map(|i| {
                let mut v = vec![0u64; m];
                v[i] = 1;
                v
            })
            .collect()];
        for mat in class_mats.iter().take(m).skip(1) {
            let mut next = Vec::new();
            for basis in subspaces.drain(..) {
                let d = basis.len();
                if d == 1 {
                    next.push(basis);
                    continue;
                }
                // restriction R of N_i to the subspace: N_i * b_c = sum R[r][c] b_r
                let bmat: Vec<Vec<u64>> = (0..m)
                    .map(|row| (0..d).map(|c| basis[c][row]).collect())
                    .collect();
                let mut rmat = vec![vec![0u64; d]; d];
                for (c, b) in basis.iter().enumerate() {
                    let image: Vec<u64> = (0..m)
                        .map(|j| {
                            let mut acc = 0u64;
                            for k in 0..m {
                                acc = (acc + mat[j][k] * b[k]) % p;
                            }
                            acc
                        })
                        .collect();
                    // wait: N_i acts by (N_i v)_j = sum_k N_i[j][k]? see below
                    let coords = solve(&bmat, &image, p);
                    for r in 0..d {
                        rmat[r][c] = coords[r];
                    }
                }
                // split into the eigenspaces of R (kept whole: a multi-
                // dimensional eigenspace is refined by later matrices)
                let mut total = 0;
                for lambda in 0..p {
                    let shifted: Vec<Vec<u64>> = (0..d)
                        .map(|r| {
                            (0..d)
                                .map(|c| {
                                    let v = rmat[r][c];
                                    if r == c {
                                        (v + p - lambda % p) % p
                                    } else {
                                        v
                                    }
                                })
                                .collect()
                        })
                        .collect();
                    let eig = kernel(&shifted, p);
                    if eig.is_empty() {
                        continue;
                    }
                    let lifted: Vec<Vec<u64>> = eig
                        .iter()
                        .map(|kv| {
                            let mut v = vec![0u64; m];
                            for (c, b) in basis.iter().enumerate() {
                                for j in 0..m {
                                    v[j] = (v[j] + kv[c] * b[j]) % p;
                                }
                            }
                            v
                        })
                        .collect();
                    total += lifted.len();
                    next.push(lifted);
                    if total == d {
                        break;
                    }
                }
                assert_eq!(total, d, "class matrix must be diagonalizable");
            }
            subspaces = next;
            if subspaces.iter().all(|s| s.len() == 1) {
                break;
            }
        }
        assert!(subspaces.iter().all(|s| s.len() == 1));

        // each eigenline gives omega_j = |C_j| chi(g_j) / chi(1) mod p
        let mut rows_modp: Vec<(u64, Vec<u64>)> = Vec::new(); // (degree, chi values mod p)
        for s in &subspaces {
            let v = &s[0];
            assert!(v[0] != 0, "identity coordinate of eigenvector nonzero");
            let norm = inv_mod(v[0], p);
            let omega: Vec<u64> = v.iter().map(|&x| x * norm % p).collect();
            // 1/d^2 = (1/|G|) sum_j omega_j omega_{j'} / |C_j|
            let mut acc = 0u64;
            for j in 0..m {
                let jp = group.inverse_class(j);
                let cj = group.class_size(j) as u64 % p;
                acc = (acc + omega[j] * omega[jp] % p * inv_mod(cj, p)) % p;
            }
            let d2 = n % p * inv_mod(acc, p) % p;
            let mut degree = 0u64;
            for d in 1..=n {
                if d * d > n {
                    break;
                }
                if d * d % p == d2 {
                    degree = d;
                    break;
                }
            }
            assert!(degree > 0, "degree recovery failed");
            let chi: Vec<u64> = (0..m)
                .map(|j| {
                    let cj = group.class_size(j) as u64 % p;
                    degree % p * omega[j] % p * inv_mod(cj, p) % p
                })
                .collect();
            rows_modp.push((degree, chi));
        }

        // lift chi values to cyclotomics by a mod-p discrete Fourier transform
        let theta = {
            // a primitive root of GF(p), raised to (p-1)/exponent
            let mut g = 2;
            'outer: loop {
                let mut q = 2;
                let mut ok = true;
                while q <= p - 1 {
                    if (p - 1) % q == 0 {
                        if pow_mod(g, (p - 1) / q, p) == 1 {
                            ok = false;
                            break;
                        }
                        let mut r = p - 1;
                        while r % q == 0 {
                            r /= q;
                        }
                    }
                    q += 1;
                }
                if ok {
                    break 'outer pow_mod(g, (p - 1) / exponent, p);
                }
                g += 1;
            }
        };
        let mut table: Vec<(u64, Vec<CycloNum>)> = Vec::new();
        for (degree, chi) in rows_modp {
            let mut row = Vec::with_capacity(m);
            for k in 0..m {
                let rep = group.classes[k][0];
                let r = group.element_order(rep);
                let theta_r = pow_mod(theta, exponent / r, p);
                // chi(g^t) for t = 0..r-1
                let mut powers = Vec::with_capacity(r as usize);
                let mut x = 0usize; // identity
                for _ in 0..r {
                    powers.push(chi[group.class_of[x]]);
                    x = group.mult_table[x][rep];
                }
                let rinv = inv_mod(r % p, p);
                let mut value = CycloNum::zero();
                for s in 0..r {
                    let mut acc = 0u64;
                    for (t, &cv) in powers.iter().enumerate() {
                        let e = (t as u64 * s) % r;
                        acc = (acc + cv * inv_mod(pow_mod(theta_r, e, p), p)) % p;
                    }
                    let ms = acc * rinv % p;
                    assert!(ms <= degree, "multiplicity exceeds degree");
                    if ms > 0 {
                        value += &CycloNum::zeta_pow(r, s as i64)
                            .scale(&crate::exact::Rat::from_integer((ms as i64).into()));
                    }
                }
                row.push(value);
            }
            table.push((degree, row));
        }
        // sort: trivial character first, then by degree, then stable key
        table.sort_by_key(|(d, row)| {
            let trivial = row.iter().all(|c| *c == CycloNum::one());
            let key: String = row.iter().map(|c| format!("{};", c)).collect();
            (!trivial, *d, key)
        });
        let degrees = table.iter().map(|(d, _)| *d).collect();
        let rows = table.into_iter().map(|(_, r)| r).collect();
        (rows, degrees)
    }
}

/// A normal pair G1 <| G2 with quotient data.
#[derive(Debug)]
pub struct NormalPair {
    pub g1: Arc<FinSL2Group>,
    pub g2: Arc<FinSL2Group>,
    /// index in G2 of each G1 element
    pub inclusion: Vec<usize>,
    /// G2 index -> Some(G1 index) for members of G1
    pub membership: Vec<Option<usize>>,
    /// coset representatives (G2 indices), identity coset first
    pub coset_reps: Vec<usize>,
    /// quotient multiplication on coset indices
    pub quotient_mult: Vec<Vec<usize>>,
    /// class_action[q][k] = image class of G1-class k under conjugation by
    /// coset rep q
    pub class_action: Vec<Vec<usize>>,
    /// orbits of the NONTRIVIAL G1 classes under the quotient action (the
    /// sets S_1, ..., S_k whose sums span Z(C[G1]) /\ Z(C[G2]) with 1_G1)
    pub orbits: Vec<Vec<usize>>,
}

impl NormalPair {
    pub fn quotient_order(&self) -> usize {
        self.coset_reps.len()
    }

    /// g x g^{-1} computed inside G2, returned as a G1 index; x a G1 index,
    /// g a G2 index.
    pub fn conj_in_g1(&self, g: usize, x: usize) -> usize {
        let m = &self.g2.mult_table;
        let y = m[m[g][self.inclusion[x]]][self.g2.inverse[g]];
        self.membership[y].expect("normality")
    }
}

pub fn normal_pair(spec1: GroupSpec, spec2: GroupSpec) -> Result<NormalPair, GroupError> {
    let g1 = build_group(spec1);
    let g2 = build_group(spec2);
    normal_pair_of(g1, g2)
}

pub fn normal_pair_of(
    g1: Arc<FinSL2Group>,
    g2: Arc<FinSL2Group>,
) -> Result<NormalPair, GroupError> {
    let conductor = num::integer::lcm(g1.conductor, g2.conductor);
    let map2 = g2.key_map(conductor);
    let mut inclusion = Vec::with_capacity(g1.order());
    for m in &g1.elements {
        match map2.get(&mat_key(m, conductor)) {
            Some(&j) => inclusion.push(j),
            None => return Err(GroupError::NotSubgroup),
        }
    }
    let mut membership = vec![None; g2.order()];
    for (i, &j) in inclusion.iter().enumerate() {
        membership[j] = Some(i);
    }
    // normality: g x g^-1 in G1 for all g in G2, x in G1
    for g in 0..g2.order() {
        for &x in &inclusion {
            let y = g2.mult_table[g2.mult_table[g][x]][g2.inverse[g]];
            if membership[y].is_none() {
                return Err(GroupError::NotNormal);
            }
        }
    }
    // cosets
    let mut coset_of = vec![usize::MAX; g2.order()];
    let mut coset_reps = Vec::new();
    for g in 0..g2.order() {
        if coset_of[g] != usize::MAX {
            continue;
        }
        let q = coset_reps.len();
        coset_reps.push(g);
        for &x in &inclusion {
            coset_of[g2.mult_table[g][x]] = q;
        }
    }
    let nq = coset_reps.len();
    let mut quotient_mult = vec![vec![0usize; nq]; nq];
    for a in 0..nq {
        for b in 0..nq {
            quotient_mult[a][b] = coset_of[g2.mult_table[coset_reps[a]][coset_reps[b]]];
        }
    }
    // conjugation action on G1 classes
    let mut class_action = Vec::with_capacity(nq);
    for &rep in &coset_reps {
        let mut perm = Vec::with_capacity(g1.num_classes());
        for k in 0..g1.num_classes() {
            let x = g1.classes[k][0];
            let y = g2.mult_table[g2.mult_table[rep][inclusion[x]]][g2.inverse[rep]];
            let x1 = membership[y].unwrap();
            perm.push(g1.class_of[x1]);
        }
        class_action.push(perm);
    }
    // orbits of nontrivial classes
    let mut seen = vec![false; g1.num_classes()];
    seen[0] = true;
    let mut orbits = Vec::new();
    for k in 1..g1.num_classes() {
        if seen[k] {
            continue;
        }
        let mut orbit = vec![k];
        seen[k] = true;
        let mut stack = vec![k];
        while let Some(c) = stack.pop() {
            for perm in &class_action {
                let d = perm[c];
                if !seen[d] {
                    seen[d] = true;
                    orbit.push(d);
                    stack.push(d);
                }
            }
        }
        orbit.sort();
        orbits.push(orbit);
    }
    Ok(NormalPair {
        g1,
        g2,
        inclusion,
        membership,
        coset_reps,
        quotient_mult,
        class_action,
        orbits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_2() {
        let g = build_group(GroupSpec::Cyclic(2));
        assert_eq!(g.order(), 2);
        assert_eq!(g.num_classes(), 2);
        // char table ((1,1),(1,-1))
        assert_eq!(g.char_table[0], vec![CycloNum::one(), CycloNum::one()]);
        assert_eq!(
            g.char_table[1],
            vec![CycloNum::one(), CycloNum::from_int(-1)]
        );
    }

    #[test]
    fn cyclic_3_characters() {
        let g = build_group(GroupSpec::Cyclic(3));
        assert_eq!(g.num_classes(), 3);
        assert_eq!(g.degrees, vec![1, 1, 1]);
        // each nontrivial row takes values in cube roots of unity
        let w = CycloNum::zeta(3);
        for i in 1..3 {
            for v in &g.char_table[i] {
                assert!(
                    *v == CycloNum::one() || *v == w || *v == w.pow(2),
                    "value {} not a cube root",
                    v
                );
            }
        }
    }

    #[test]
    fn quaternion_group() {
        let g = build_group(GroupSpec::BinaryDihedral(2));
        assert_eq!(g.order(), 8);
        assert_eq!(g.num_classes(), 5);
        assert_eq!(g.degrees, vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn binary_tetrahedral() {
        let g = build_group(GroupSpec::BinaryTetrahedral);
        assert_eq!(g.order(), 24);
        assert_eq!(g.num_classes(), 7);
        assert_eq!(g.degrees, vec![1, 1, 1, 2, 2, 2, 3]);
    }

    #[test]
    fn binary_octahedral() {
        let g = build_group(GroupSpec::BinaryOctahedral);
        assert_eq!(g.order(), 48);
        assert_eq!(g.num_classes(), 8);
        assert_eq!(g.degrees, vec![1, 1, 2, 2, 2, 3, 3, 4]);
    }

    #[test]
    fn binary_icosahedral() {
        let g = build_group(GroupSpec::BinaryIcosahedral);
        assert_eq!(g.order(), 120);
        assert_eq!(g.num_classes(), 9);
        assert_eq!(g.degrees, vec![1, 2, 2, 3, 3, 4, 4, 5, 6]);
    }

    #[test]
    fn reynolds_examples() {
        let uv = RingSpec::uv();
        let u = WPoly::var(&uv, 0);
        let v = WPoly::var(&uv, 1);
        for n in [2u64, 3, 5] {
            let g = build_group(GroupSpec::Cyclic(n));
            let p = u.mul(&v);
            assert_eq!(g.reynolds(&p), p, "uv invariant under C{}", n);
            assert!(g.reynolds(&u).is_zero(), "no invariant of degree 1");
        }
        let c2 = build_group(GroupSpec::Cyclic(2));
        let u2 = u.pow(2);
        assert_eq!(c2.reynolds(&u2), u2);
        // idempotence on a random-ish polynomial
        let g = build_group(GroupSpec::BinaryDihedral(2));
        let p = u.pow(4).add(&u.mul(&v.pow(3)).scale(&CycloNum::from_int(3)));
        let r = g.reynolds(&p);
        assert_eq!(g.reynolds(&r), r);
    }

    #[test]
    fn molien_matches_invariant_basis() {
        for spec in [
            GroupSpec::Cyclic(4),
            GroupSpec::BinaryDihedral(2),
            GroupSpec::BinaryTetrahedral,
        ] {
            let g = build_group(spec);
            let mol = g.molien(10);
            for d in 0..=10u64 {
                assert_eq!(
                    g.invariant_basis(d).len(),
                    mol[d as usize] as usize,
                    "{} degree {}",
                    spec,
                    d
                );
            }
        }
    }

    #[test]
    fn normal_pairs() {
        let p = normal_pair(GroupSpec::Cyclic(2), GroupSpec::Cyclic(4)).unwrap();
        assert_eq!(p.quotient_order(), 2);
        // abelian: trivial action on classes
        for perm in &p.class_action {
            for (k, &img) in perm.iter().enumerate() {
                assert_eq!(k, img);
            }
        }

        let p = normal_pair(GroupSpec::Cyclic(6), GroupSpec::BinaryDihedral(3)).unwrap();
        assert_eq!(p.quotient_order(), 2);
        // nontrivial element swaps classes {g, g^-1}
        let flip = &p.class_action[1];
        for k in 0..p.g1.num_classes() {
            assert_eq!(flip[k], p.g1.inverse_class(k));
        }

        let p = normal_pair(GroupSpec::Cyclic(3), GroupSpec::BinaryDihedral(3)).unwrap();
        assert_eq!(p.quotient_order(), 4);

        assert!(matches!(
            normal_pair(GroupSpec::Cyclic(5), GroupSpec::BinaryTetrahedral),
            Err(GroupError::NotSubgroup)
        ));
    }

    #[test]
    fn mult_table_spot_checks() {
        let g = build_group(GroupSpec::BinaryDihedral(3));
        // associativity on a few triples
        for (a, b, c) in [(1, 5, 9), (2, 3, 4), (11, 7, 1)] {
            let ab_c = g.mult_table[g.mult_table[a][b]][c];
            let a_bc = g.mult_table[a][g.mult_table[b][c]];
            assert_eq!(ab_c, a_bc);
        }
        for i in 0..g.order() {
            assert_eq!(g.mult_table[i][g.inverse[i]], 0);
        }
    }
}
