//! Degree-truncated noncommutative deformations of C[u,v] x| G: the
//! crossed product with the single relation vu = uv - c for a central
//! parameter c in the group algebra, spherical subalgebras, commutativity
//! detection, invariant embeddings for normal pairs, and first-order
//! bracket extraction.

use crate::exact::{solve_linear, CycloNum, ExactMatrix, LinearSolution, Rat};
use crate::grp::{FinSL2Group, NormalPair};
use crate::poly::{RingSpec, WPoly};
use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

/// An element in PBW normal form: sum over (a, b, g) of coeff u^a v^b g,
/// coefficients in the parameter base ring.
#[derive(Debug, Clone, PartialEq)]
pub struct NCElement {
    pub terms: BTreeMap<(u32, u32, usize), WPoly>,
}

impl NCElement {
    pub fn zero() -> NCElement {
        NCElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: (u32, u32, usize), coeff: WPoly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.remove(&key) {
            None => {
                self.terms.insert(key, coeff);
            }
            Some(old) => {
                let s = old.add(&coeff);
                if !s.is_zero() {
                    self.terms.insert(key, s);
                }
            }
        }
    }

    pub fn add(&self, other: &NCElement) -> NCElement {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NCElement) -> NCElement {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.neg());
        }
        out
    }

    pub fn scale(&self, c: &CycloNum) -> NCElement {
        NCElement {
            terms: self
                .terms
                .iter()
                .map(|(k, p)| (*k, p.scale(c)))
                .collect(),
        }
    }

    pub fn scale_poly(&self, c: &WPoly) -> NCElement {
        let mut out = NCElement::zero();
        for (k, p) in &self.terms {
            out.add_term(*k, p.mul(c));
        }
        out
    }
}

/// The truncated algebra C<u, v> x| G / (vu - uv + c), graded with
/// deg u = deg v = 1 and every base parameter of weight 2; all products
/// are reduced modulo the ideal of degree > trunc.
#[derive(Debug)]
pub struct CbhAlgebra {
    pub group: Arc<FinSL2Group>,
    /// parameter base ring (t_1..t_r and z, each of weight 2; empty for
    /// specialized algebras)
    pub base: Arc<RingSpec>,
    /// coefficient of each group element in c
    pub c: Vec<WPoly>,
    pub trunc: u32,
    /// whether every c coefficient is homogeneous of weight 2, making
    /// the degree-> trunc ideal graded; with weight-0 (specialized)
    /// parameters truncating intermediates would break associativity, so
    /// products are then computed exactly
    graded: bool,
    /// action scalars per element: (g u g^-1, g v g^-1) in the u, v basis
    act: Vec<[CycloNum; 4]>,
    vbu_cache: Mutex<Vec<Option<Arc<NCElement>>>>,
}

impl CbhAlgebra {
    fn base_of(group: &Arc<FinSL2Group>, trunc: u32, base: Arc<RingSpec>, c: Vec<WPoly>) -> CbhAlgebra {
        let uv = RingSpec::uv();
        let act: Vec<[CycloNum; 4]> = (0..group.order())
            .map(|g| {
                let gu = group.act_uv(g, &WPoly::var(&uv, 0));
                let gv = group.act_uv(g, &WPoly::var(&uv, 1));
                [
                    gu.coeff(&vec![1, 0]),
                    gu.coeff(&vec![0, 1]),
                    gv.coeff(&vec![1, 0]),
                    gv.coeff(&vec![0, 1]),
                ]
            })
            .collect();
        let graded = c
            .iter()
            .all(|p| p.is_zero() || (p.is_homogeneous() && p.weighted_degree() == Some(2)));
        CbhAlgebra {
            group: group.clone(),
            base,
            c,
            trunc,
            graded,
            act,
            vbu_cache: Mutex::new(Vec::new()),
        }
    }

    /// Generic parameters: c = sum_{k >= 1} t_k C_k + z sum_{g} g over
    /// the nontrivial conjugacy class sums C_k.
    pub fn generic(group: &Arc<FinSL2Group>, trunc: u32) -> CbhAlgebra {
        let r = group.num_classes() - 1;
        let mut vars: Vec<String> = (1..=r).map(|k| format!("t{}", k)).collect();
        vars.push("z".to_string());
        let var_refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        let base = RingSpec::new(&var_refs, &vec![2; r + 1]);
        let c: Vec<WPoly> = (0..group.order())
            .map(|g| {
                let k = group.class_of[g];
                let mut p = WPoly::var(&base, r); // z
                if k > 0 {
                    p = p.add(&WPoly::var(&base, k - 1));
                }
                p
            })
            .collect();
        Self::base_of(group, trunc, base, c)
    }

    /// Rational parameters: t_k per nontrivial conjugacy class and z.
    pub fn specialized(group: &Arc<FinSL2Group>, trunc: u32, t: &[Rat], z: &Rat) -> CbhAlgebra {
        assert_eq!(t.len(), group.num_classes() - 1);
        let base = RingSpec::new(&[], &[]);
        let c: Vec<WPoly> = (0..group.order())
            .map(|g| {
                let k = group.class_of[g];
                let mut val = z.clone();
                if k > 0 {
                    val += &t[k - 1];
                }
                WPoly::constant(&base, CycloNum::from_rat(val))
            })
            .collect();
        Self::base_of(group, trunc, base, c)
    }

    /// Explicit c, one base-ring coefficient per group element; must be
    /// invariant under conjugation for the algebra to deform C[u,v]^G.
    pub fn with_c(group: &Arc<FinSL2Group>, trunc: u32, base: Arc<RingSpec>, c: Vec<WPoly>) -> CbhAlgebra {
        assert_eq!(c.len(), group.order());
        Self::base_of(group, trunc, base, c)
    }

    pub fn word(&self, a: u32, b: u32, g: usize) -> NCElement {
        let mut el = NCElement::zero();
        if (a + b) as u64 <= self.trunc as u64 {
            el.add_term((a, b, g), WPoly::one(&self.base));
        }
        el
    }

    /// Drop all coefficient terms of total degree a + b + weight > trunc.
    fn truncate(&self, el: NCElement) -> NCElement {
        if !self.graded {
            return el;
        }
        let mut out = NCElement::zero();
        for ((a, b, g), coeff) in el.terms {
            let cap = self.trunc as i64 - (a + b) as i64;
            if cap < 0 {
                continue;
            }
            let kept = WPoly::from_terms(
                &self.base,
                coeff
                    .terms()
                    .filter(|(m, _)| coeff.ring.mono_degree(m) as i64 <= cap)
                    .map(|(m, c)| (m.clone(), c.clone()))
                    .collect(),
            );
            out.add_term((a, b, g), kept);
        }
        out
    }

    /// Normal form of v^b u (memoized): v^b u = (v^{b-1} u) v - v^{b-1} c.
    fn vbu(&self, b: u32) -> Arc<NCElement> {
        {
            let cache = self.vbu_cache.lock().unwrap();
            if let Some(Some(el)) = cache.get(b as usize) {
                return el.clone();
            }
        }
        let el = if b == 0 {
            self.word(1, 0, self.group.identity())
        } else {
            let prev = self.vbu(b - 1);
            let mut out = self.right_mul_v(&prev);
            // v^{b-1} c = sum_h c_h v^{b-1} h, already in normal form
            for (h, ch) in self.c.iter().enumerate() {
                if !ch.is_zero() {
                    out.add_term((0, b - 1, h), ch.neg());
                }
            }
            self.truncate(out)
        };
        let el = Arc::new(el);
        let mut cache = self.vbu_cache.lock().unwrap();
        if cache.len() <= b as usize {
            cache.resize(b as usize + 1, None);
        }
        cache[b as usize] = Some(el.clone());
        el
    }

    /// x * u in normal form.
    pub fn right_mul_u(&self, x: &NCElement) -> NCElement {
        let mut out = NCElement::zero();
        for (&(a, b, g), coeff) in &x.terms {
            // g u = (gamma u + delta v) g
            let gamma = &self.act[g][0];
            let delta = &self.act[g][1];
            if !delta.is_zero() {
                out.add_term((a, b + 1, g), coeff.scale(delta));
            }
            if !gamma.is_zero() {
                let vb = self.vbu(b);
                for (&(a2, b2, h), c2) in &vb.terms {
                    let mult = self.group.mult_table[h][g];
                    out.add_term((a + a2, b2, mult), coeff.mul(c2).scale(gamma));
                }
            }
        }
        self.truncate(out)
    }

    /// x * v in normal form.
    pub fn right_mul_v(&self, x: &NCElement) -> NCElement {
        let mut out = NCElement::zero();
        for (&(a, b, g), coeff) in &x.terms {
            // g v = (gamma u + delta v) g
            let gamma = &self.act[g][2];
            let delta = &self.act[g][3];
            if !delta.is_zero() {
                out.add_term((a, b + 1, g), coeff.scale(delta));
            }
            if !gamma.is_zero() {
                let vb = self.vbu(b);
                for (&(a2, b2, h), c2) in &vb.terms {
                    let mult = self.group.mult_table[h][g];
                    out.add_term((a + a2, b2, mult), coeff.mul(c2).scale(gamma));
                }
            }
        }
        self.truncate(out)
    }

    pub fn right_mul_g(&self, x: &NCElement, g2: usize) -> NCElement {
        let mut out = NCElement::zero();
        for (&(a, b, g), coeff) in &x.terms {
            out.add_term((a, b, self.group.mult_table[g][g2]), coeff.clone());
        }
        out
    }

    pub fn mul(&self, x: &NCElement, y: &NCElement) -> NCElement {
        let mut out = NCElement::zero();
        for (&(a2, b2, g2), c2) in &y.terms {
            let mut cur = NCElement {
                terms: x
                    .terms
                    .iter()
                    .map(|(k, c)| (*k, c.mul(c2)))
                    .collect(),
            };
            cur = self.truncate(cur);
            for _ in 0..a2 {
                cur = self.right_mul_u(&cur);
            }
            for _ in 0..b2 {
                cur = self.right_mul_v(&cur);
            }
            cur = self.right_mul_g(&cur, g2);
            out = out.add(&cur);
        }
        out
    }

    pub fn commutator(&self, x: &NCElement, y: &NCElement) -> NCElement {
        self.mul(x, y).sub(&self.mul(y, x))
    }

    /// The symmetrizing idempotent e = (1/|G|) sum_g g.
    pub fn e(&self) -> NCElement {
        let inv = CycloNum::from_rat(Rat::new(1.into(), (self.group.order() as i64).into()));
        let mut el = NCElement::zero();
        for g in 0..self.group.order() {
            el.add_term((0, 0, g), WPoly::constant(&self.base, inv.clone()));
        }
        el
    }

    /// Spherical element e u^a v^b e.
    pub fn spherical(&self, a: u32, b: u32) -> NCElement {
        let e = self.e();
        self.mul(&self.mul(&e, &self.word(a, b, self.group.identity())), &e)
    }

    /// Apply a G2-coset automorphism to an element of the G1-algebra of a
    /// pair: letters move by the matrix of the representative, group
    /// components by conjugation. The parameter c must be invariant under
    /// the representative for this to be an algebra map.
    pub fn apply_coset(&self, pair: &NormalPair, rep: usize, x: &NCElement) -> NCElement {
        let uv = RingSpec::uv();
        let gu = pair.g2.act_uv(rep, &WPoly::var(&uv, 0));
        let gv = pair.g2.act_uv(rep, &WPoly::var(&uv, 1));
        let lin = |p: &WPoly| -> NCElement {
            let mut el = NCElement::zero();
            el.add_term(
                (1, 0, self.group.identity()),
                WPoly::constant(&self.base, p.coeff(&vec![1, 0])),
            );
            el.add_term(
                (0, 1, self.group.identity()),
                WPoly::constant(&self.base, p.coeff(&vec![0, 1])),
            );
            el
        };
        let iu = lin(&gu);
        let iv = lin(&gv);
        let mut out = NCElement::zero();
        for (&(a, b, g), coeff) in &x.terms {
            let mut cur = self.word(0, 0, self.group.identity());
            for _ in 0..a {
                cur = self.mul(&cur, &iu);
            }
            for _ in 0..b {
                cur = self.mul(&cur, &iv);
            }
            cur = self.right_mul_g(&cur, pair.conj_in_g1(rep, g));
            out = out.add(&cur.scale_poly(coeff));
        }
        self.truncate(out)
    }
}

/// Coordinates of specialized elements over the PBW basis triples (for
/// rank computations); panics on non-constant coefficients.
fn coordinate_matrix(els: &[&NCElement]) -> (Vec<(u32, u32, usize)>, ExactMatrix) {
    let mut support: Vec<(u32, u32, usize)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for el in els {
        for k in el.terms.keys() {
            if seen.insert(*k) {
                support.push(*k);
            }
        }
    }
    let mut m = ExactMatrix::zero(els.len().max(1), support.len().max(1));
    for (i, el) in els.iter().enumerate() {
        for (j, k) in support.iter().enumerate() {
            if let Some(c) = el.terms.get(k) {
                m.set(i, j, c.coeff(&vec![]));
            }
        }
    }
    (support, m)
}

/// PBW property of the truncated product: re-expanding every reversed
/// word v^b u^a g yields u^a v^b g plus strictly lower-degree terms, so
/// the filtered dimension at level d is (d+1)(d+2)/2 * |G|.
pub fn pbw_filtered_check(alg: &CbhAlgebra, dmax: u32) -> bool {
    for d in 0..=dmax {
        for a in 0..=d {
            let b = d - a;
            let mut x = alg.word(0, b, alg.group.identity());
            for _ in 0..a {
                x = alg.right_mul_u(&x);
            }
            for g in 0..alg.group.order() {
                let y = alg.right_mul_g(&x, g);
                match y.terms.get(&(a, b, g)) {
                    Some(c) if *c == WPoly::one(&alg.base) => {}
                    _ => return false,
                }
                if y.terms
                    .keys()
                    .any(|&(a2, b2, _)| (a2, b2) != (a, b) && a2 + b2 >= a + b)
                {
                    return false;
                }
            }
        }
    }
    true
}

/// Cumulative spherical dimensions: dims[d] = rank of the span of
/// e u^a v^b e with a + b <= d (specialized algebra).
pub fn spherical_dims(alg: &CbhAlgebra, dmax: u32) -> Vec<usize> {
    let mut els = Vec::new();
    let mut dims = Vec::new();
    for d in 0..=dmax {
        for a in 0..=d {
            els.push(alg.spherical(a, d - a));
        }
        let refs: Vec<&NCElement> = els.iter().collect();
        let (_, m) = coordinate_matrix(&refs);
        dims.push(m.rank());
    }
    dims
}

/// The truncated spherical subalgebra is flat when its cumulative
/// dimensions agree with the cumulative Molien series of the group.
pub fn flatness_check(alg: &CbhAlgebra, dmax: u32) -> bool {
    let mol = alg.group.molien(dmax as usize);
    let dims = spherical_dims(alg, dmax);
    let mut cum = 0usize;
    for d in 0..=dmax as usize {
        cum += mol[d] as usize;
        if dims[d] != cum {
            return false;
        }
    }
    true
}

/// Search for a commutator witness among spherical elements; returns
/// None when all pairwise commutators up to the truncation vanish.
pub fn commutativity_witness(alg: &CbhAlgebra, dmax: u32) -> Option<((u32, u32), (u32, u32))> {
    let mut labels = Vec::new();
    for d in 1..=dmax {
        for a in 0..=d {
            labels.push((a, d - a));
        }
    }
    let els: Vec<NCElement> = labels.iter().map(|&(a, b)| alg.spherical(a, b)).collect();
    for i in 0..els.len() {
        for j in (i + 1)..els.len() {
            if labels[i].0 + labels[i].1 + labels[j].0 + labels[j].1 > dmax {
                continue;
            }
            if !alg.commutator(&els[i], &els[j]).is_zero() {
                return Some((labels[i], labels[j]));
            }
        }
    }
    None
}

/// Invariant-embedding data for a normal pair at one parameter point.
#[derive(Debug)]
pub struct EmbeddingReport {
    /// cumulative dims of the Q-invariant part of the small spherical
    /// algebra
    pub invariant_dims: Vec<usize>,
    /// cumulative spherical dims of the big algebra at the same c
    pub spherical_dims: Vec<usize>,
    /// every relation among the big spherical generators also holds
    /// between their Q-averaged images
    pub well_defined: bool,
    /// the correspondence respects products on sampled pairs
    pub multiplicative: bool,
}

/// Compare e2 A2 e2 with the Q-invariants of e1 A1 e1 where both
/// algebras share the same parameter c (supported on G1, constant on
/// G2-classes). `t` gives one value per nontrivial G1-class and must be
/// constant on Q-orbits.
pub fn invariant_embedding(
    pair: &NormalPair,
    t: &[Rat],
    z: &Rat,
    trunc: u32,
) -> EmbeddingReport {
    // Q-invariance of the parameters
    for action in &pair.class_action {
        for k in 1..pair.g1.num_classes() {
            assert_eq!(
                t[k - 1],
                t[action[k] - 1],
                "t must be constant on quotient orbits"
            );
        }
    }
    let alg1 = CbhAlgebra::specialized(&pair.g1, trunc, t, z);
    // the same c viewed in the big group: supported on G1
    let base2 = RingSpec::new(&[], &[]);
    let c2: Vec<WPoly> = (0..pair.g2.order())
        .map(|g| match pair.membership[g] {
            Some(g1) => {
                let k = pair.g1.class_of[g1];
                let mut val = z.clone();
                if k > 0 {
                    val += &t[k - 1];
                }
                WPoly::constant(&base2, CycloNum::from_rat(val))
            }
            None => WPoly::zero(&base2),
        })
        .collect();
    let alg2 = CbhAlgebra::with_c(&pair.g2, trunc, base2, c2);

    let quot = pair.quotient_order();
    let inv_q = CycloNum::from_rat(Rat::new(1.into(), (quot as i64).into()));
    // Q-averaged images L(a, b) in the small algebra
    let avg = |a: u32, b: u32| -> NCElement {
        let s = alg1.spherical(a, b);
        let mut acc = NCElement::zero();
        for &rep in &pair.coset_reps {
            acc = acc.add(&alg1.apply_coset(pair, rep, &s));
        }
        acc.scale(&inv_q)
    };
    let mut labels = Vec::new();
    for d in 0..=trunc {
        for a in 0..=d {
            labels.push((a, d - a));
        }
    }
    let small: Vec<NCElement> = labels.iter().map(|&(a, b)| avg(a, b)).collect();
    let big: Vec<NCElement> = labels.iter().map(|&(a, b)| alg2.spherical(a, b)).collect();
    let mut invariant_dims = Vec::new();
    let mut sph_dims = Vec::new();
    for d in 0..=trunc {
        let upto: Vec<usize> = (0..labels.len())
            .filter(|&i| labels[i].0 + labels[i].1 <= d)
            .collect();
        let s: Vec<&NCElement> = upto.iter().map(|&i| &small[i]).collect();
        let b: Vec<&NCElement> = upto.iter().map(|&i| &big[i]).collect();
        invariant_dims.push(coordinate_matrix(&s).1.rank());
        sph_dims.push(coordinate_matrix(&b).1.rank());
    }
    // well-definedness: kernel vectors of the big spanning set kill the
    // averaged images too
    let refs: Vec<&NCElement> = big.iter().collect();
    let (_, m) = coordinate_matrix(&refs);
    let mut well_defined = true;
    for kv in m.transpose().kernel() {
        let mut acc = NCElement::zero();
        for (i, coeff) in kv.iter().enumerate() {
            if !coeff.is_zero() {
                acc = acc.add(&small[i].scale(coeff));
            }
        }
        if !acc.is_zero() {
            well_defined = false;
        }
    }
    // multiplicativity on low-degree samples: express a big product in
    // the big spanning set, push through L, compare with the product of
    // the images
    let mut multiplicative = true;
    let samples: Vec<((u32, u32), (u32, u32))> = labels
        .iter()
        .flat_map(|&l1| labels.iter().map(move |&l2| (l1, l2)))
        .filter(|&((a, b), (a2, b2))| {
            let d = a + b + a2 + b2;
            d > 0 && d <= trunc.min(6)
        })
        .take(12)
        .collect();
    for ((a, b), (a2, b2)) in samples {
        let prod2 = alg2.mul(
            &alg2.spherical(a, b),
            &alg2.spherical(a2, b2),
        );
        // solve prod2 = sum_i x_i big_i
        let mut all: Vec<&NCElement> = big.iter().collect();
        all.push(&prod2);
        let (support, m) = coordinate_matrix(&all);
        let mut a_mat = ExactMatrix::zero(support.len(), big.len());
        let mut rhs = vec![CycloNum::zero(); support.len()];
        for (j, _) in support.iter().enumerate() {
            for i in 0..big.len() {
                a_mat.set(j, i, m.get(i, j).clone());
            }
            rhs[j] = m.get(big.len(), j).clone();
        }
        let coeffs = match solve_linear(&a_mat, &rhs) {
            LinearSolution::Solution { particular, .. } => particular,
            LinearSolution::Inconsistent => {
                multiplicative = false;
                continue;
            }
        };
        let mut lhs = NCElement::zero();
        for (i, coeff) in coeffs.iter().enumerate() {
            if !coeff.is_zero() {
                lhs = lhs.add(&small[i].scale(coeff));
            }
        }
        let small_prod = alg1.mul(
            &avg(a, b),
            &avg(a2, b2),
        );
        if lhs != small_prod {
            multiplicative = false;
        }
    }
    EmbeddingReport {
        invariant_dims,
        spherical_dims: sph_dims,
        well_defined,
        multiplicative,
    }
}

/// First-order bracket extraction in the generic algebra: the degree-2
/// part of [e p e, e q e] equals z e {p, q} e with the Poisson bracket
/// {u, v} = 1 (the class parameters t_k do not contribute at first
/// order on the spherical subalgebra).
pub fn first_order_bracket_check(alg: &CbhAlgebra, a: u32, b: u32, a2: u32, b2: u32) -> bool {
    let x = alg.spherical(a, b);
    let y = alg.spherical(a2, b2);
    let comm = alg.commutator(&x, &y);
    // {u^a v^b, u^a2 v^b2} = (a b2 - a2 b) u^{a+a2-1} v^{b+b2-1}
    let factor = a as i64 * b2 as i64 - a2 as i64 * b as i64;
    let mut expected = NCElement::zero();
    if factor != 0 && a + a2 >= 1 && b + b2 >= 1 {
        let pb = alg.spherical(a + a2 - 1, b + b2 - 1);
        // multiply by z times the integer factor
        let zvar = WPoly::var(&alg.base, alg.base.nvars() - 1)
            .scale(&CycloNum::from_int(factor));
        expected = pb.scale_poly(&zvar);
    }
    let diff = comm.sub(&expected);
    // the base-degree <= 2 part must vanish
    for ((_, _, _), coeff) in &diff.terms {
        for (m, c) in coeff.terms() {
            if coeff.ring.mono_degree(m) <= 2 && !c.is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{build_group, normal_pair, GroupSpec};
    use num::Zero;
    use rand::{Rng, SeedableRng};

    fn c2_alg(t: i64, z: i64) -> CbhAlgebra {
        let g = build_group(GroupSpec::Cyclic(2));
        CbhAlgebra::specialized(
            &g,
            8,
            &[Rat::from_integer(t.into())],
            &Rat::from_integer(z.into()),
        )
    }

    #[test]
    fn basic_relation() {
        let alg = c2_alg(3, 5);
        let id = alg.group.identity();
        let u = alg.word(1, 0, id);
        let v = alg.word(0, 1, id);
        let uv = alg.mul(&u, &v);
        let vu = alg.mul(&v, &u);
        // vu = uv - c
        let diff = uv.sub(&vu);
        // c = (3 + 5) on the nontrivial element, 5 on the identity
        assert_eq!(diff.terms.len(), 2);
        let s = 1 - id; // the other element of C2
        assert_eq!(diff.terms[&(0, 0, id)].coeff(&vec![]), CycloNum::from_int(5));
        assert_eq!(diff.terms[&(0, 0, s)].coeff(&vec![]), CycloNum::from_int(8));
    }

    #[test]
    fn associativity_seeded() {
        let alg = c2_alg(2, -1);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let id = alg.group.identity();
        let rand_el = |rng: &mut rand_chacha::ChaCha8Rng| -> NCElement {
            let mut el = NCElement::zero();
            for _ in 0..4 {
                let a = rng.gen_range(0..3u32);
                let b = rng.gen_range(0..3u32);
                let g = rng.gen_range(0..2usize);
                let c = CycloNum::from_int(rng.gen_range(-3i64..=3));
                el = el.add(&alg.word(a, b, g).scale(&c));
            }
            let _ = id;
            el
        };
        for _ in 0..8 {
            let x = rand_el(&mut rng);
            let y = rand_el(&mut rng);
            let z = rand_el(&mut rng);
            let lhs = alg.mul(&alg.mul(&x, &y), &z);
            let rhs = alg.mul(&x, &alg.mul(&y, &z));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn idempotent_e() {
        let alg = c2_alg(1, 1);
        let e = alg.e();
        assert_eq!(alg.mul(&e, &e), e);
    }

    #[test]
    fn pbw_dimension_count() {
        // with c = 0 the truncated algebra has one basis word per label:
        // dims of degree <= d part are |G| * (number of (a,b), a+b <= d)
        let g = build_group(GroupSpec::Cyclic(3));
        let alg = CbhAlgebra::specialized(&g, 6, &[Rat::zero(), Rat::zero()], &Rat::zero());
        let mut els = Vec::new();
        for d in 0..=4u32 {
            for a in 0..=d {
                for h in 0..3 {
                    els.push(alg.word(a, d - a, h));
                }
            }
        }
        let refs: Vec<&NCElement> = els.iter().collect();
        let (_, m) = coordinate_matrix(&refs);
        assert_eq!(m.rank(), els.len());
    }

    #[test]
    fn commutative_iff_z_zero() {
        // c supported away from the identity keeps the spherical algebra
        // commutative; any z != 0 breaks it
        let comm = c2_alg(7, 0);
        assert!(commutativity_witness(&comm, 6).is_none());
        let noncomm = c2_alg(0, 1);
        let w = commutativity_witness(&noncomm, 6);
        assert!(w.is_some());
        // the classical witness pair
        let a = noncomm.spherical(1, 1);
        let b = noncomm.spherical(2, 0);
        assert!(!noncomm.commutator(&a, &b).is_zero());
    }

    #[test]
    fn flatness_small_groups() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
        for spec in [GroupSpec::Cyclic(2), GroupSpec::Cyclic(3), GroupSpec::BinaryDihedral(2)] {
            let g = build_group(spec);
            let t: Vec<Rat> = (1..g.num_classes())
                .map(|_| Rat::from_integer(rng.gen_range(-4i64..=4).into()))
                .collect();
            let z = Rat::from_integer(rng.gen_range(-4i64..=4).into());
            let alg = CbhAlgebra::specialized(&g, 6, &t, &z);
            assert!(flatness_check(&alg, 6), "{}", spec);
        }
    }

    #[test]
    fn invariant_embedding_c2_c4() {
        let pair = normal_pair(GroupSpec::Cyclic(2), GroupSpec::Cyclic(4)).unwrap();
        let rep = invariant_embedding(&pair, &[Rat::from_integer(3.into())], &Rat::zero(), 6);
        assert_eq!(rep.invariant_dims, rep.spherical_dims);
        assert!(rep.well_defined);
        assert!(rep.multiplicative);
    }

    #[test]
    fn first_order_bracket_c2() {
        let g = build_group(GroupSpec::Cyclic(2));
        let alg = CbhAlgebra::generic(&g, 6);
        assert!(first_order_bracket_check(&alg, 1, 1, 2, 0));
        assert!(first_order_bracket_check(&alg, 2, 0, 0, 2));
    }
}
