//! Invariant rings C[u,v]^G with their ADE relations, Milnor algebras
//! with socle certificates, the lifts psi and cofactors q of normal
//! pairs, the socle map, and derivation-space computations.

use crate::exact::{solve_linear, CycloNum, ExactMatrix, LinearSolution};
use crate::grp::{echelonize, FinSL2Group, GroupSpec, NormalPair};
use crate::poly::{
    buchberger, monomials_of_degree, normal_form, GroebnerBasis, Mono, QuotientBasis, RingSpec,
    WPoly,
};
use num::{One, Signed};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum KleinError {
    #[error("generator degrees mismatch")]
    DegreesMismatch,
    #[error("expression not found")]
    ExpressionNotFound,
    #[error("image not proportional to socle")]
    ImageNotProportional,
    #[error("relation space not one-dimensional")]
    RelationNotUnique,
}

/// The generator degrees (deg x, deg y, deg z) of C[u,v]^G per family.
pub fn target_degrees(spec: GroupSpec) -> (u64, u64, u64) {
    match spec {
        GroupSpec::Cyclic(n) => (2, n, n),
        GroupSpec::BinaryDihedral(n) => (4, 2 * n, 2 * n + 2),
        GroupSpec::BinaryTetrahedral => (6, 8, 12),
        GroupSpec::BinaryOctahedral => (8, 12, 18),
        GroupSpec::BinaryIcosahedral => (12, 20, 30),
    }
}

/// Invariant generators, ADE relation, Milnor data for one group.
#[derive(Debug)]
pub struct KleinianData {
    pub group: Arc<FinSL2Group>,
    /// the ring C[x, y, z] with the weighted grading of the generators
    pub ring: Arc<RingSpec>,
    /// X, Y, Z as polynomials in (u, v)
    pub gens: Vec<WPoly>,
    /// homogeneous relation f(x, y, z) with f(X, Y, Z) = 0
    pub relation: WPoly,
    pub jacobian_gb: GroebnerBasis,
    /// monomials below the Jacobian staircase, sorted by weighted degree
    pub milnor_basis: Vec<Mono>,
    /// the distinguished top-degree basis monomial
    pub socle: Mono,
}

impl KleinianData {
    pub fn deg_f(&self) -> u64 {
        self.relation.weighted_degree().unwrap()
    }

    /// Evaluate a polynomial in (x, y, z) at the invariant generators.
    pub fn pi(&self, p: &WPoly) -> WPoly {
        p.substitute(&[self.gens[0].clone(), self.gens[1].clone(), self.gens[2].clone()])
    }

    /// Dimension of C[x,y,z]/(f) in weighted degree d: staircase count of
    /// the principal ideal.
    pub fn invariant_dim_relation(&self, d: u64) -> usize {
        let lead = self.relation.leading().unwrap().0;
        monomials_of_degree(&self.ring, d)
            .into_iter()
            .filter(|m| !lead.iter().zip(m.iter()).all(|(a, b)| a <= b))
            .count()
    }

    /// Express a G-invariant (u,v)-polynomial as a polynomial in the
    /// generators. Uses leading-monomial subduction (deterministic,
    /// giving the natural expressions for the cyclic family), with a
    /// graded linear solve as fallback.
    pub fn express_invariant(&self, p: &WPoly) -> Result<WPoly, KleinError> {
        if p.is_zero() {
            return Ok(WPoly::zero(&self.ring));
        }
        assert!(p.is_homogeneous(), "only homogeneous inputs supported");
        if let Some(expr) = self.subduct(p) {
            return Ok(expr);
        }
        self.express_by_linear_algebra(p)
    }

    fn subduct(&self, p: &WPoly) -> Option<WPoly> {
        let lms: Vec<Mono> = self
            .gens
            .iter()
            .map(|g| g.leading().unwrap().0.clone())
            .collect();
        let mut residual = p.clone();
        let mut expr = WPoly::zero(&self.ring);
        while let Some((lm, lc)) = residual.leading().map(|(m, c)| (m.clone(), c.clone())) {
            // find exponents (a, b, c) with a lmX + b lmY + c lmZ = lm,
            // preferring small z then small y exponents
            let mut found = None;
            'search: for c in 0..=max_mult(&lms[2], &lm) {
                for b in 0..=max_mult(&lms[1], &lm) {
                    let partial: Vec<i64> = (0..2)
                        .map(|i| {
                            lm[i] as i64
                                - (b * lms[1][i]) as i64
                                - (c * lms[2][i]) as i64
                        })
                        .collect();
                    if partial.iter().any(|&x| x < 0) {
                        continue;
                    }
                    if lms[0].iter().all(|&e| e == 0) {
                        continue;
                    }
                    // partial must be a multiple of lmX
                    let mut a = None;
                    for i in 0..2 {
                        if lms[0][i] > 0 {
                            if partial[i] as u32 % lms[0][i] != 0 {
                                a = None;
                                break;
                            }
                            let q = partial[i] as u32 / lms[0][i];
                            match a {
                                None => a = Some(q),
                                Some(prev) if prev != q => {
                                    a = None;
                                    break;
                                }
                                _ => {}
                            }
                        } else if partial[i] != 0 {
                            a = None;
                            break;
                        }
                    }
                    if let Some(a) = a {
                        if (0..2).all(|i| {
                            a * lms[0][i] + b * lms[1][i] + c * lms[2][i] == lm[i]
                        }) {
                            found = Some((a, b, c));
                            break 'search;
                        }
                    }
                }
            }
            let (a, b, c) = found?;
            let prod = self.gens[0]
                .pow(a)
                .mul(&self.gens[1].pow(b))
                .mul(&self.gens[2].pow(c));
            let (_, plc) = prod.leading().unwrap();
            let coeff = &lc * &plc.inv().unwrap();
            residual = residual.sub(&prod.scale(&coeff));
            expr.add_term(vec![a, b, c], coeff);
            if residual.is_zero() {
                return Some(expr);
            }
        }
        Some(expr)
    }

    fn express_by_linear_algebra(&self, p: &WPoly) -> Result<WPoly, KleinError> {
        let d = p.weighted_degree().unwrap();
        let monos = monomials_of_degree(&self.ring, d);
        let images: Vec<WPoly> = monos
            .iter()
            .map(|m| {
                self.pi(&WPoly::monomial(&self.ring, m.clone(), CycloNum::one()))
            })
            .collect();
        match crate::grp::express_in_span(p, &images) {
            Some(coeffs) => Ok(WPoly::from_terms(
                &self.ring,
                monos.into_iter().zip(coeffs).collect(),
            )),
            None => Err(KleinError::ExpressionNotFound),
        }
    }

    /// For every Milnor basis monomial b, a certificate (t, lambda) with
    /// normal_form(t * b) = lambda * socle, lambda != 0 (simple socle).
    pub fn socle_certificates(&self) -> Vec<(Mono, Mono, CycloNum)> {
        let socle_deg = self.ring.mono_degree(&self.socle);
        let mut out = Vec::new();
        for b in &self.milnor_basis {
            let bd = self.ring.mono_degree(b);
            let mut cert = None;
            for t in monomials_of_degree(&self.ring, socle_deg - bd) {
                let prod = WPoly::monomial(
                    &self.ring,
                    t.iter().zip(b.iter()).map(|(x, y)| x + y).collect(),
                    CycloNum::one(),
                );
                let nf = normal_form(&prod, &self.jacobian_gb);
                let lambda = nf.coeff(&self.socle);
                if !lambda.is_zero() {
                    assert_eq!(
                        nf,
                        WPoly::monomial(&self.ring, self.socle.clone(), lambda.clone()),
                        "top-degree normal form must be a socle multiple"
                    );
                    cert = Some((b.clone(), t, lambda));
                    break;
                }
            }
            out.push(cert.expect("socle essentiality certificate exists"));
        }
        out
    }
}

fn max_mult(lm: &Mono, target: &Mono) -> u32 {
    // largest k with k * lm <= target componentwise
    let mut best = u32::MAX;
    for i in 0..lm.len() {
        if lm[i] > 0 {
            best = best.min(target[i] / lm[i]);
        }
    }
    if best == u32::MAX {
        0
    } else {
        best
    }
}

/// A monic invariant of degree d (the generator degrees of the
/// exceptional families have one-dimensional invariant spaces).
fn reynolds_seed(group: &FinSL2Group, d: u64) -> Option<WPoly> {
    group.invariant_basis(d).into_iter().next().map(|p| p.monic())
}

pub fn build_kleinian(group: &Arc<FinSL2Group>) -> Result<KleinianData, KleinError> {
    assert!(group.order() > 1, "group must be nontrivial");
    let (dx, dy, dz) = target_degrees(group.spec);
    let uv = RingSpec::uv();
    let mono = |a: u32, b: u32| WPoly::monomial(&uv, vec![a, b], CycloNum::one());
    let (x, y, mut z) = match group.spec {
        GroupSpec::Cyclic(n) => {
            let x = group.reynolds(&mono(1, 1)).monic();
            let y = group.reynolds(&mono(n as u32, 0)).monic();
            let z = group.reynolds(&mono(0, n as u32)).monic();
            (x, y, z)
        }
        GroupSpec::BinaryDihedral(n) => {
            let x = group.reynolds(&mono(2, 2)).monic();
            let y = group.reynolds(&mono(2 * n as u32, 0)).monic();
            let z = group.reynolds(&mono(2 * n as u32 + 1, 1)).monic();
            (x, y, z)
        }
        _ => {
            let x = reynolds_seed(group, dx).ok_or(KleinError::DegreesMismatch)?;
            let y = reynolds_seed(group, dy).ok_or(KleinError::DegreesMismatch)?;
            // at degree dz, reduce against products of x and y
            let mut products = Vec::new();
            for a in 0..=(dz / dx) {
                if dz < a * dx {
                    continue;
                }
                let rem = dz - a * dx;
                if rem % dy == 0 {
                    products.push(x.pow(a as u32).mul(&y.pow((rem / dy) as u32)));
                }
            }
            let products = echelonize(products);
            let mut z = None;
            let basis = group.invariant_basis(dz);
            for cand in basis {
                let mut r = cand;
                for p in &products {
                    let (lm, _) = p.leading().unwrap();
                    let c = r.coeff(lm);
                    if !c.is_zero() {
                        r = r.sub(&p.scale(&c));
                    }
                }
                if !r.is_zero() {
                    z = Some(r.monic());
                    break;
                }
            }
            (x, y, z.ok_or(KleinError::DegreesMismatch)?)
        }
    };
    // weighted degree sanity
    if x.weighted_degree() != Some(dx)
        || y.weighted_degree() != Some(dy)
        || z.weighted_degree() != Some(dz)
    {
        return Err(KleinError::DegreesMismatch);
    }
    let ring = RingSpec::new(&["x", "y", "z"], &[dx, dy, dz]);
    let deg_f = dx + dy + dz - 2;

    let solve_relation = |gens: &[WPoly]| -> Result<WPoly, KleinError> {
        let monos = monomials_of_degree(&ring, deg_f);
        let uv_monos = monomials_of_degree(&uv, deg_f);
        let index: std::collections::HashMap<&Mono, usize> =
            uv_monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut mat = ExactMatrix::zero(uv_monos.len(), monos.len());
        for (c, m) in monos.iter().enumerate() {
            let img = WPoly::monomial(&ring, m.clone(), CycloNum::one())
                .substitute(&[gens[0].clone(), gens[1].clone(), gens[2].clone()]);
            for (um, uc) in img.terms() {
                mat.set(index[um], c, uc.clone());
            }
        }
        let kernel = mat.kernel();
        if kernel.len() != 1 {
            return Err(KleinError::RelationNotUnique);
        }
        Ok(WPoly::from_terms(
            &ring,
            monos.into_iter().zip(kernel.into_iter().next().unwrap()).collect(),
        ))
    };

    let mut relation = solve_relation(&[x.clone(), y.clone(), z.clone()])?;
    // remove a cross term x^a z by the shift z -> z + (delta / 2 gamma) x^a
    // (occurs for the tetrahedral family)
    let z_sq: Mono = vec![0, 0, 2];
    if dz % dx == 0 {
        let a = (dz / dx) as u32;
        let cross: Mono = vec![a, 0, 1];
        let delta = relation.coeff(&cross);
        if !delta.is_zero() {
            let gamma = relation.coeff(&z_sq);
            assert!(!gamma.is_zero());
            let lambda = &delta * &(&gamma + &gamma).inv().unwrap();
            z = z.add(&x.pow(a).scale(&lambda));
            relation = solve_relation(&[x.clone(), y.clone(), z.clone()])?;
            assert!(relation.coeff(&cross).is_zero());
        }
    }
    // normalize the scale per family
    let anchor: Mono = match group.spec {
        GroupSpec::Cyclic(n) => vec![n as u32, 0, 0],
        GroupSpec::BinaryDihedral(_) => vec![1, 2, 0],
        _ => z_sq,
    };
    let lead = relation.coeff(&anchor);
    assert!(!lead.is_zero(), "anchor monomial present in the relation");
    relation = relation.scale(&lead.inv().unwrap());
    let gens = vec![x, y, z];
    // f(X, Y, Z) = 0 exactly
    assert!(relation
        .substitute(&[gens[0].clone(), gens[1].clone(), gens[2].clone()])
        .is_zero());
    assert_eq!(relation.weighted_degree(), Some(deg_f));

    let jacobian: Vec<WPoly> = (0..3).map(|i| relation.partial(i)).collect();
    let jacobian_gb = buchberger(&jacobian);
    let milnor_basis = match crate::poly::quotient_basis(&jacobian_gb) {
        QuotientBasis::Finite(b) => b,
        QuotientBasis::Infinite => return Err(KleinError::DegreesMismatch),
    };
    let top = milnor_basis
        .iter()
        .map(|m| ring.mono_degree(m))
        .max()
        .unwrap();
    let socles: Vec<&Mono> = milnor_basis
        .iter()
        .filter(|m| ring.mono_degree(m) == top)
        .collect();
    assert_eq!(socles.len(), 1, "simple socle");
    let socle = socles[0].clone();
    assert_eq!(top, deg_f - 4, "deg a_M = deg f - 4");
    Ok(KleinianData {
        group: group.clone(),
        ring,
        gens,
        relation,
        jacobian_gb,
        milnor_basis,
        socle,
    })
}

/// A ring homomorphism psi lifting the inclusion C[u,v]^{G2} into
/// C[u,v]^{G1}, with the cofactor q satisfying q * f1 = psi(f2).
#[derive(Debug)]
pub struct PsiLift {
    /// images of (x2, y2, z2) in C[x1, y1, z1]
    pub images: Vec<WPoly>,
    /// q21 in C[x1, y1, z1]
    pub cofactor: WPoly,
}

impl PsiLift {
    /// psi applied to a polynomial in the big group's presentation ring.
    pub fn apply(&self, p: &WPoly) -> WPoly {
        p.substitute(&self.images)
    }
}

/// Lift the inclusion of invariant rings for a pair small <= big of
/// groups (small group has MORE invariants: G1 <= G2 means
/// C[u,v]^{G2} inside C[u,v]^{G1}; `inner` is G1's data, `outer` G2's).
pub fn lift_psi(outer: &KleinianData, inner: &KleinianData) -> Result<PsiLift, KleinError> {
    let images: Result<Vec<WPoly>, KleinError> = outer
        .gens
        .iter()
        .map(|g| inner.express_invariant(g))
        .collect();
    let images = images?;
    let psi_f2 = outer.relation.substitute(&images);
    let cofactor = crate::poly::exact_divide(&psi_f2, &inner.relation)
        .map_err(|_| KleinError::ExpressionNotFound)?;
    Ok(PsiLift { images, cofactor })
}

/// A second, randomized lift: perturb each image by a multiple of f1
/// when degrees allow (used to verify independence of the socle map
/// from the choice of psi).
pub fn lift_psi_seeded(
    outer: &KleinianData,
    inner: &KleinianData,
    seed: u64,
) -> Result<PsiLift, KleinError> {
    use rand::{Rng, SeedableRng};
    let base = lift_psi(outer, inner)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let f1 = &inner.relation;
    let df1 = inner.deg_f();
    let images: Vec<WPoly> = base
        .images
        .iter()
        .map(|img| {
            let d = img.weighted_degree().unwrap_or(0);
            if d < df1 {
                return img.clone();
            }
            let mut out = img.clone();
            for m in monomials_of_degree(&inner.ring, d - df1) {
                let c = CycloNum::from_int(rng.gen_range(-2i64..=2));
                out = out.add(&f1.mul_term(&m, &c));
            }
            out
        })
        .collect();
    let psi_f2 = outer.relation.substitute(&images);
    let cofactor = crate::poly::exact_divide(&psi_f2, f1)
        .map_err(|_| KleinError::ExpressionNotFound)?;
    Ok(PsiLift { images, cofactor })
}

/// The socle-map scalar alpha: the image of pi1(q21) * b in the Milnor
/// algebra of the big group equals alpha * socle2, where b is a Milnor
/// representative of socle1 chosen so the product is G2-invariant.
pub fn socle_map(
    pair: &NormalPair,
    inner: &KleinianData,
    outer: &KleinianData,
    lift: &PsiLift,
) -> Result<CycloNum, KleinError> {
    let pi_q = inner.pi(&lift.cofactor);
    let socle_deg = inner.ring.mono_degree(&inner.socle);
    // Jacobian-ideal elements of the socle degree in (x1, y1, z1)
    let mut jac_elems: Vec<WPoly> = Vec::new();
    for i in 0..3 {
        let d = inner.relation.partial(i);
        if d.is_zero() {
            continue;
        }
        let dd = d.weighted_degree().unwrap();
        if dd > socle_deg {
            continue;
        }
        for m in monomials_of_degree(&inner.ring, socle_deg - dd) {
            jac_elems.push(d.mul_term(&m, &CycloNum::one()));
        }
    }
    let a_uv = inner.pi(&WPoly::monomial(
        &inner.ring,
        inner.socle.clone(),
        CycloNum::one(),
    ));
    let jac_uv: Vec<WPoly> = jac_elems.iter().map(|j| inner.pi(j)).collect();
    // Reynolds over G2 of (u,v)-polynomials: the big group acting
    let reyn2 = |p: &WPoly| pair.g2.reynolds(p);
    // defect(p) = R2(pi_q * p) - pi_q * p must vanish
    let defect = |b_uv: &WPoly| {
        let w = pi_q.mul(b_uv);
        reyn2(&w).sub(&w)
    };
    let d0 = defect(&a_uv);
    let dj: Vec<WPoly> = jac_uv.iter().map(defect).collect();
    // solve d0 + sum lambda_j dj_j = 0
    let mut monos: Vec<Mono> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for p in dj.iter().chain(std::iter::once(&d0)) {
        for (m, _) in p.terms() {
            if seen.insert(m.clone()) {
                monos.push(m.clone());
            }
        }
    }
    let lambdas = if monos.is_empty() {
        vec![CycloNum::zero(); jac_uv.len()]
    } else {
        let mut a = ExactMatrix::zero(monos.len(), dj.len());
        let mut rhs = vec![CycloNum::zero(); monos.len()];
        for (r, m) in monos.iter().enumerate() {
            for (c, p) in dj.iter().enumerate() {
                a.set(r, c, p.coeff(m));
            }
            rhs[r] = -d0.coeff(m);
        }
        match solve_linear(&a, &rhs) {
            LinearSolution::Solution { particular, .. } => particular,
            // no exactly invariant product exists for this lift; the
            // Reynolds average below still yields the same class since
            // averaging is linear over the big invariant ring
            LinearSolution::Inconsistent => vec![CycloNum::zero(); jac_uv.len()],
        }
    };
    let mut b_uv = a_uv;
    for (l, j) in lambdas.iter().zip(&jac_uv) {
        b_uv = b_uv.add(&j.scale(l));
    }
    let w = reyn2(&pi_q.mul(&b_uv));
    // express w in the big group's generators and reduce mod its Jacobian
    let w_xyz = outer.express_invariant(&w)?;
    let nf = normal_form(&w_xyz, &outer.jacobian_gb);
    let alpha = nf.coeff(&outer.socle);
    let expected = WPoly::monomial(&outer.ring, outer.socle.clone(), alpha.clone());
    if nf != expected || alpha.is_zero() {
        return Err(KleinError::ImageNotProportional);
    }
    Ok(alpha)
}

/// Dimension of Der(C[u,v]^{G2}, C[u,v]^{G1}) in weighted degree d,
/// computed on the singularity side: triples (a, b, c) of G1-invariants
/// with a f_x + b f_y + c f_z = 0 identically in (u, v).
pub fn derivation_dimension(outer: &KleinianData, inner_group: &FinSL2Group, d: i64) -> usize {
    let uv = RingSpec::uv();
    let mut unknowns: Vec<WPoly> = Vec::new(); // contribution polynomials in (u,v)
    for i in 0..3 {
        let w = outer.ring.weights[i] as i64;
        let deg = d + w;
        if deg < 0 {
            continue;
        }
        let partial_uv = outer.pi(&outer.relation.partial(i));
        for b in inner_group.invariant_basis(deg as u64) {
            unknowns.push(b.mul(&partial_uv));
        }
    }
    if unknowns.is_empty() {
        return 0;
    }
    let mut monos: Vec<Mono> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for p in &unknowns {
        for (m, _) in p.terms() {
            if seen.insert(m.clone()) {
                monos.push(m.clone());
            }
        }
    }
    let _ = uv;
    let mut a = ExactMatrix::zero(monos.len().max(1), unknowns.len());
    for (r, m) in monos.iter().enumerate() {
        for (c, p) in unknowns.iter().enumerate() {
            a.set(r, c, p.coeff(m));
        }
    }
    a.kernel().len()
}

/// Independent count: G1-equivariant derivations of C[u,v] of degree d,
/// via the character inner product <chi_taut, chi_{Sym^{d+1}}>.
pub fn equivariant_derivation_count(group: &FinSL2Group, d: i64) -> usize {
    if d + 1 < 0 {
        return 0;
    }
    let m = (d + 1) as u64;
    let uv = RingSpec::uv();
    let monos = monomials_of_degree(&uv, m);
    // chi_{Sym^m} per class
    let sym_char: Vec<CycloNum> = (0..group.num_classes())
        .map(|k| {
            let g = group.classes[k][0];
            let mut tr = CycloNum::zero();
            for mo in &monos {
                let img = group.act_uv(g, &WPoly::monomial(&uv, mo.clone(), CycloNum::one()));
                tr += &img.coeff(mo);
            }
            tr
        })
        .collect();
    let inner = crate::grp::char_inner(group, &group.taut_values, &sym_char);
    let r = inner.as_rational().expect("multiplicity is rational");
    assert!(r.denom().is_one() && !r.numer().is_negative());
    u64::try_from(r.numer()).unwrap() as usize
}

/// Are two polynomials equal up to x -> l x, y -> m y, z -> n z and a
/// global scalar? Decided exactly via the integer kernel of the exponent
/// matrix (with an all-ones column for the global scalar).
pub fn diagonally_equivalent(f: &WPoly, g: &WPoly) -> bool {
    let mf: Vec<(&Mono, &CycloNum)> = f.terms().collect();
    let support_g: std::collections::HashSet<&Mono> = g.terms().map(|(m, _)| m).collect();
    if mf.len() != support_g.len() || !mf.iter().all(|(m, _)| support_g.contains(m)) {
        return false;
    }
    let nvars = f.ring.nvars();
    // rows: one per monomial; columns: exponents + 1s column
    let rows: Vec<Vec<CycloNum>> = mf
        .iter()
        .map(|(m, _)| {
            let mut row: Vec<CycloNum> =
                m.iter().map(|&e| CycloNum::from_int(e as i64)).collect();
            row.push(CycloNum::one());
            row
        })
        .collect();
    let mat = ExactMatrix::from_rows(rows).transpose(); // (nvars+1) x k
    let _ = nvars;
    for kv in mat.kernel() {
        // scale the rational kernel vector to integers
        let mut denom_lcm = num::BigInt::one();
        for c in &kv {
            let r = c.as_rational().expect("kernel of a rational matrix");
            denom_lcm = num::integer::lcm(denom_lcm, r.denom().clone());
        }
        let ints: Vec<num::BigInt> = kv
            .iter()
            .map(|c| {
                let r = c.as_rational().unwrap();
                r.numer() * (&denom_lcm / r.denom())
            })
            .collect();
        // compare products of coefficients^k across f and g
        let mut prod_f = CycloNum::one();
        let mut prod_g = CycloNum::one();
        for ((m, cf), k) in mf.iter().zip(&ints) {
            let cg = g.coeff(m);
            let e = k.magnitude().to_u64_digits();
            let e = if e.is_empty() { 0 } else { e[0] };
            if k.is_negative() {
                prod_f = &prod_f * &cf.inv().unwrap().pow(e);
                prod_g = &prod_g * &cg.inv().unwrap().pow(e);
            } else {
                prod_f = &prod_f * &cf.pow(e);
                prod_g = &prod_g * &cg.pow(e);
            }
        }
        if prod_f != prod_g {
            return false;
        }
    }
    true
}

/// Chain identity pi1(q31) = pi2(q32) * pi1(q21) for G1 <= G2 <= G3,
/// with psi31 = psi21 compose psi32.
pub fn chain_identity(
    k1: &KleinianData,
    k2: &KleinianData,
    k3: &KleinianData,
) -> Result<bool, KleinError> {
    let l21 = lift_psi(k2, k1)?;
    let l32 = lift_psi(k3, k2)?;
    let images31: Vec<WPoly> = l32.images.iter().map(|p| l21.apply(p)).collect();
    let psi31_f3 = k3.relation.substitute(&images31);
    let q31 = crate::poly::exact_divide(&psi31_f3, &k1.relation)
        .map_err(|_| KleinError::ExpressionNotFound)?;
    let lhs = k1.pi(&q31);
    let rhs = k2.pi(&l32.cofactor).mul(&k1.pi(&l21.cofactor));
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rat;
    use crate::grp::{build_group, normal_pair};

    fn kd(spec: GroupSpec) -> KleinianData {
        build_kleinian(&build_group(spec)).unwrap()
    }

    fn relation_of(terms: &[(&[u32; 3], i64)], ring: &Arc<RingSpec>) -> WPoly {
        WPoly::from_terms(
            ring,
            terms
                .iter()
                .map(|(m, c)| (m.to_vec(), CycloNum::from_int(*c)))
                .collect(),
        )
    }

    #[test]
    fn cyclic_2_and_4() {
        let k = kd(GroupSpec::Cyclic(2));
        assert_eq!(k.ring.weights, vec![2, 2, 2]);
        let f = relation_of(&[(&[2, 0, 0], 1), (&[0, 1, 1], -1)], &k.ring);
        assert_eq!(k.relation, f);
        assert_eq!(k.milnor_basis, vec![vec![0, 0, 0]]);
        assert_eq!(k.socle, vec![0, 0, 0]);

        let k = kd(GroupSpec::Cyclic(4));
        let f = relation_of(&[(&[4, 0, 0], 1), (&[0, 1, 1], -1)], &k.ring);
        assert_eq!(k.relation, f);
        assert_eq!(
            k.milnor_basis,
            vec![vec![0, 0, 0], vec![1, 0, 0], vec![2, 0, 0]]
        );
        assert_eq!(k.socle, vec![2, 0, 0]); // x^{n-2}
    }

    #[test]
    fn binary_dihedral_relation() {
        for n in 2..=4u64 {
            let k = kd(GroupSpec::BinaryDihedral(n));
            assert_eq!(k.ring.weights, vec![4, 2 * n, 2 * n + 2]);
            let f = relation_of(
                &[
                    (&[1, 2, 0], 1),
                    (&[0, 0, 2], -1),
                    (&[n as u32 + 1, 0, 0], -4),
                ],
                &k.ring,
            );
            assert_eq!(k.relation, f, "BD({})", n);
            assert_eq!(k.milnor_basis.len(), n as usize + 2);
            // the socle class is x^n (for n = 2 the staircase picks the
            // equivalent monomial y^2, since x and y share weight 4)
            assert_eq!(k.ring.mono_degree(&k.socle), 4 * n);
            let xn = WPoly::monomial(&k.ring, vec![n as u32, 0, 0], CycloNum::one());
            let nf = normal_form(&xn, &k.jacobian_gb);
            let c = nf.coeff(&k.socle);
            assert!(!c.is_zero());
            assert_eq!(nf, WPoly::monomial(&k.ring, k.socle.clone(), c));
        }
    }

    #[test]
    fn tetrahedral_family() {
        let k = kd(GroupSpec::BinaryTetrahedral);
        assert_eq!(k.ring.weights, vec![6, 8, 12]);
        assert_eq!(k.deg_f(), 24);
        assert_eq!(k.milnor_basis.len(), 6);
        assert_eq!(k.socle, vec![2, 1, 0]); // x^2 y
        assert_eq!(k.ring.mono_degree(&k.socle), 20);
        // equivalent to x^4 + y^3 + z^2 up to diagonal rescaling
        let model = relation_of(&[(&[4, 0, 0], 1), (&[0, 3, 0], 1), (&[0, 0, 2], 1)], &k.ring);
        assert!(diagonally_equivalent(&k.relation, &model));
    }

    #[test]
    fn socle_certificates_c6() {
        let k = kd(GroupSpec::Cyclic(6));
        let certs = k.socle_certificates();
        assert_eq!(certs.len(), 5);
        for (b, t, lambda) in certs {
            assert!(!lambda.is_zero());
            let prod = WPoly::monomial(
                &k.ring,
                t.iter().zip(b.iter()).map(|(x, y)| x + y).collect(),
                CycloNum::one(),
            );
            let nf = normal_form(&prod, &k.jacobian_gb);
            assert_eq!(nf, WPoly::monomial(&k.ring, k.socle.clone(), lambda));
        }
    }

    #[test]
    fn lift_c2_c4() {
        let k1 = kd(GroupSpec::Cyclic(2));
        let k2 = kd(GroupSpec::Cyclic(4));
        let l = lift_psi(&k2, &k1).unwrap();
        // x2 -> x1, y2 -> y1^2, z2 -> z1^2
        assert_eq!(l.images[0], WPoly::var(&k1.ring, 0));
        assert_eq!(l.images[1], WPoly::var(&k1.ring, 1).pow(2));
        assert_eq!(l.images[2], WPoly::var(&k1.ring, 2).pow(2));
        // q = x^2 + yz
        let q = relation_of(&[(&[2, 0, 0], 1), (&[0, 1, 1], 1)], &k1.ring);
        assert_eq!(l.cofactor, q);
        // pi1(q) = 2 (uv)^2
        let uv = RingSpec::uv();
        let expect = WPoly::monomial(&uv, vec![2, 2], CycloNum::from_int(2));
        assert_eq!(k1.pi(&l.cofactor), expect);
    }

    #[test]
    fn cofactor_cyclic_values() {
        // pi1(q21) = (l/k) (uv)^(l-k) for C_k inside C_l
        let uv = RingSpec::uv();
        for (k, l) in [(2u64, 4u64), (2, 6), (3, 6), (2, 8)] {
            let inner = kd(GroupSpec::Cyclic(k));
            let outer = kd(GroupSpec::Cyclic(l));
            let lift = lift_psi(&outer, &inner).unwrap();
            let got = inner.pi(&lift.cofactor);
            let expect = WPoly::monomial(
                &uv,
                vec![(l - k) as u32, (l - k) as u32],
                CycloNum::from_rat(Rat::new((l as i64).into(), (k as i64).into())),
            );
            assert_eq!(got, expect, "C{} in C{}", k, l);
        }
    }

    #[test]
    fn trivial_lift() {
        let k = kd(GroupSpec::Cyclic(3));
        let l = lift_psi(&k, &k).unwrap();
        for (i, img) in l.images.iter().enumerate() {
            assert_eq!(img, &WPoly::var(&k.ring, i));
        }
        assert_eq!(l.cofactor, WPoly::one(&k.ring));
    }

    #[test]
    fn socle_map_values() {
        let k2 = kd(GroupSpec::Cyclic(2));
        for (l, expect) in [(4u64, 2i64), (6, 3)] {
            let outer = kd(GroupSpec::Cyclic(l));
            let pair = normal_pair(GroupSpec::Cyclic(2), GroupSpec::Cyclic(l)).unwrap();
            let lift = lift_psi(&outer, &k2).unwrap();
            let alpha = socle_map(&pair, &k2, &outer, &lift).unwrap();
            assert_eq!(alpha, CycloNum::from_int(expect), "C2 in C{}", l);
        }
        // C2 in BD(2): some nonzero alpha
        let outer = kd(GroupSpec::BinaryDihedral(2));
        let pair = normal_pair(GroupSpec::Cyclic(2), GroupSpec::BinaryDihedral(2)).unwrap();
        let lift = lift_psi(&outer, &k2).unwrap();
        let alpha = socle_map(&pair, &k2, &outer, &lift).unwrap();
        assert!(!alpha.is_zero());
        // independence from the lift choice
        let lift2 = lift_psi_seeded(&outer, &k2, 12345).unwrap();
        let alpha2 = socle_map(&pair, &k2, &outer, &lift2).unwrap();
        assert_eq!(alpha, alpha2);
    }

    #[test]
    fn chain_c2_c4_c8() {
        let k1 = kd(GroupSpec::Cyclic(2));
        let k2 = kd(GroupSpec::Cyclic(4));
        let k3 = kd(GroupSpec::Cyclic(8));
        assert!(chain_identity(&k1, &k2, &k3).unwrap());
    }

    #[test]
    fn derivation_dimensions() {
        // single cyclic group, degree 0: dimension 2
        for n in [3u64, 4] {
            let g = build_group(GroupSpec::Cyclic(n));
            let k = build_kleinian(&g).unwrap();
            assert_eq!(derivation_dimension(&k, &g, 0), 2);
            assert_eq!(equivariant_derivation_count(&g, 0), 2);
            for d in -6..0 {
                assert_eq!(derivation_dimension(&k, &g, d), 0, "C{} degree {}", n, d);
                assert_eq!(equivariant_derivation_count(&g, d), 0);
            }
        }
        // both sides agree on a pair in positive degrees
        let g1 = build_group(GroupSpec::Cyclic(2));
        let k2 = kd(GroupSpec::Cyclic(4));
        for d in 0..=4i64 {
            assert_eq!(
                derivation_dimension(&k2, &g1, d),
                equivariant_derivation_count(&g1, d),
                "degree {}",
                d
            );
        }
    }

    #[test]
    fn molien_matches_relation_staircase() {
        for spec in [
            GroupSpec::Cyclic(3),
            GroupSpec::BinaryDihedral(2),
            GroupSpec::BinaryTetrahedral,
        ] {
            let g = build_group(spec);
            let k = build_kleinian(&g).unwrap();
            let mol = g.molien(24);
            for d in 0..=24u64 {
                assert_eq!(
                    k.invariant_dim_relation(d),
                    mol[d as usize] as usize,
                    "{} degree {}",
                    spec,
                    d
                );
            }
        }
    }

    #[test]
    fn diagonal_equivalence_examples() {
        let r = RingSpec::new(&["x", "y", "z"], &[2, 2, 2]);
        let f = relation_of(&[(&[2, 0, 0], 1), (&[0, 1, 1], -1)], &r);
        let g = relation_of(&[(&[2, 0, 0], 3), (&[0, 1, 1], 5)], &r);
        assert!(diagonally_equivalent(&f, &g));
        let h = relation_of(&[(&[2, 0, 0], 1), (&[0, 2, 0], 1)], &r);
        assert!(!diagonally_equivalent(&f, &h));
        // a genuinely constrained case: support with a kernel relation
        let r2 = RingSpec::new(&["x", "y", "z"], &[4, 4, 6]);
        let a = relation_of(&[(&[1, 2, 0], 1), (&[0, 0, 2], -1), (&[3, 0, 0], -4)], &r2);
        let b = relation_of(&[(&[1, 2, 0], 1), (&[0, 0, 2], 1), (&[3, 0, 0], 1)], &r2);
        // x y^2, z^2, x^3 all have weighted degree 12; the kernel vector
        // (1, ?, ?) constrains products of the coefficients
        assert!(diagonally_equivalent(&a, &a));
        let _ = b;
    }
}
