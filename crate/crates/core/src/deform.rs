//! Universal deformations of the Kleinian relations, the induced quotient
//! action on deformation parameters, deformations of normal pairs, and
//! specialization with a flatness check.

use crate::exact::{solve_linear, CycloNum, ExactMatrix, LinearSolution, Rat};
use crate::grp::NormalPair;
use crate::klein::{KleinError, KleinianData};
use crate::poly::{buchberger, monomials_of_degree, normal_form, GroebnerBasis, Mono, RingSpec, WPoly};
use std::sync::Arc;

/// The universal deformation F = f - sum a_j u_j over the Milnor basis,
/// in the combined graded ring [x, y, z, a_1, ..., a_m] with
/// weight(a_j) = deg f - deg u_j.
#[derive(Debug)]
pub struct Deformation {
    pub ring: Arc<RingSpec>,
    pub nparams: usize,
    /// Milnor basis monomial attached to each parameter (3-variable exps)
    pub param_monos: Vec<Mono>,
    pub big_f: WPoly,
}

/// Embed a polynomial in the first `k` variables of a larger ring.
pub fn embed_poly(p: &WPoly, ring: &Arc<RingSpec>) -> WPoly {
    let extra = ring.nvars() - p.ring.nvars();
    WPoly::from_terms(
        ring,
        p.terms()
            .map(|(m, c)| {
                let mut mm = m.clone();
                mm.extend(std::iter::repeat(0).take(extra));
                (mm, c.clone())
            })
            .collect(),
    )
}

pub fn universal_deformation(k: &KleinianData) -> Deformation {
    let deg_f = k.deg_f();
    let m = k.milnor_basis.len();
    let mut vars: Vec<String> = k.ring.vars.clone();
    let mut weights = k.ring.weights.clone();
    for (j, u) in k.milnor_basis.iter().enumerate() {
        vars.push(format!("a{}", j));
        weights.push(deg_f - k.ring.mono_degree(u));
    }
    let var_refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    let ring = RingSpec::new(&var_refs, &weights);
    let mut big_f = embed_poly(&k.relation, &ring);
    for (j, u) in k.milnor_basis.iter().enumerate() {
        let mut mono = u.clone();
        mono.extend(std::iter::repeat(0).take(m));
        mono[3 + j] = 1;
        big_f.add_term(mono, -CycloNum::one());
    }
    Deformation {
        ring,
        nparams: m,
        param_monos: k.milnor_basis.clone(),
        big_f,
    }
}

/// The action of the quotient Q = G2/G1 on the universal deformation of
/// the small group: coordinate images of (x, y, z) per coset, the
/// semi-invariance scalar of f, and the induced linear action on the
/// parameters (through the Milnor algebra).
#[derive(Debug)]
pub struct QuotientAction {
    /// images of x, y, z per coset representative (3-variable ring)
    pub geom: Vec<Vec<WPoly>>,
    /// phi_q(f) = lambda_q f
    pub lambda: Vec<CycloNum>,
    /// a |-> M_q a per coset
    pub param_matrices: Vec<ExactMatrix>,
    /// whether each phi_q maps the Milnor span to itself exactly (so
    /// tau_q(F) = lambda_q F holds on the nose)
    pub exact: bool,
    /// weight-homogeneous basis of the Q-fixed parameter subspace
    pub fixed_basis: Vec<Vec<CycloNum>>,
    /// linear forms in the parameters generating the ideal I = (im(1 - P))
    pub ideal_gens: Vec<Vec<CycloNum>>,
}

pub fn quotient_action(pair: &NormalPair, k1: &KleinianData) -> Result<QuotientAction, KleinError> {
    let m = k1.milnor_basis.len();
    let mut geom = Vec::new();
    let mut lambda = Vec::new();
    let mut param_matrices = Vec::new();
    let mut exact = true;
    for &rep in &pair.coset_reps {
        // coordinate action: q . X_i expressed back in the generators
        let images: Result<Vec<WPoly>, KleinError> = k1
            .gens
            .iter()
            .map(|g| k1.express_invariant(&pair.g2.act_uv(rep, g)))
            .collect();
        let images = images?;
        let f_img = k1.relation.substitute(&images);
        let (lm, lc) = k1.relation.leading().unwrap();
        let l = &f_img.coeff(lm) * &lc.inv().unwrap();
        assert_eq!(f_img, k1.relation.scale(&l), "f is Q-semi-invariant");
        // Milnor-algebra matrix B with phi(u_j) = sum_k B[k][j] u_k
        let mut b = ExactMatrix::zero(m, m);
        for (j, u) in k1.milnor_basis.iter().enumerate() {
            let img = WPoly::monomial(&k1.ring, u.clone(), CycloNum::one()).substitute(&images);
            if normal_form(&img, &k1.jacobian_gb) != img {
                exact = false;
            }
            let nf = normal_form(&img, &k1.jacobian_gb);
            let mut seen = WPoly::zero(&k1.ring);
            for (k, v) in k1.milnor_basis.iter().enumerate() {
                let c = nf.coeff(v);
                if !c.is_zero() {
                    seen.add_term(v.clone(), c.clone());
                }
                b.set(k, j, c);
            }
            assert_eq!(seen, nf, "normal form lies in the Milnor span");
        }
        // tau(a) = lambda B^{-1} a, column by column
        let mut minv = ExactMatrix::zero(m, m);
        for col in 0..m {
            let mut rhs = vec![CycloNum::zero(); m];
            rhs[col] = l.clone();
            match solve_linear(&b, &rhs) {
                LinearSolution::Solution { particular, .. } => {
                    for row in 0..m {
                        minv.set(row, col, particular[row].clone());
                    }
                }
                LinearSolution::Inconsistent => panic!("Milnor action is invertible"),
            }
        }
        geom.push(images);
        lambda.push(l);
        param_matrices.push(minv);
    }
    // group law: the matrices are closed under multiplication
    for a in &param_matrices {
        for b in &param_matrices {
            let prod = a.mul(b);
            assert!(
                param_matrices.iter().any(|m2| m2 == &prod),
                "parameter matrices form a group"
            );
        }
    }
    // averaging projector and its complement
    let q = param_matrices.len();
    let mut p = ExactMatrix::zero(m, m);
    for mat in &param_matrices {
        for i in 0..m {
            for j in 0..m {
                p.set(i, j, p.get(i, j) + mat.get(i, j));
            }
        }
    }
    let inv_q = CycloNum::from_rat(Rat::new(1.into(), (q as i64).into()));
    for i in 0..m {
        for j in 0..m {
            p.set(i, j, p.get(i, j) * &inv_q);
        }
    }
    assert_eq!(p.mul(&p), p, "averaging operator is idempotent");
    // fixed space: kernel of (P - 1)
    let mut p_minus = p.clone();
    for i in 0..m {
        p_minus.set(i, i, p_minus.get(i, i) - &CycloNum::one());
    }
    let fixed_basis = p_minus.kernel();
    // ideal generators: a row basis of (1 - P)
    let mut one_minus = ExactMatrix::zero(m, m);
    for i in 0..m {
        for j in 0..m {
            let delta = if i == j { CycloNum::one() } else { CycloNum::zero() };
            one_minus.set(i, j, &delta - &p.get(i, j));
        }
    }
    let pivots = one_minus.rref();
    let ideal_gens: Vec<Vec<CycloNum>> = (0..pivots.len())
        .map(|r| (0..m).map(|j| one_minus.get(r, j).clone()).collect())
        .collect();
    Ok(QuotientAction {
        geom,
        lambda,
        param_matrices,
        exact,
        fixed_basis,
        ideal_gens,
    })
}

/// The universal deformation of a normal pair: the small deformation
/// restricted to Q-invariant parameters, the deformed invariant
/// generators, and the induced relation F' among them.
#[derive(Debug)]
pub struct PairDeformation {
    /// combined ring [x1, y1, z1, b_1..b_r] (invariant parameters only)
    pub ring1: Arc<RingSpec>,
    /// F1 with non-invariant parameter directions set to zero
    pub f_red: WPoly,
    /// deformed generators x', y', z' of the big invariant ring, in ring1
    pub embedding: Vec<WPoly>,
    /// combined ring [x2, y2, z2, b_1..b_r]
    pub ring2: Arc<RingSpec>,
    /// the relation F'(x2, y2, z2; b) with F'(x', y', z'; b) in (F_red)
    pub big_f2: WPoly,
}

pub fn pair_universal_deformation(
    pair: &NormalPair,
    k1: &KleinianData,
    k2: &KleinianData,
    lift: &crate::klein::PsiLift,
) -> Result<PairDeformation, KleinError> {
    let def1 = universal_deformation(k1);
    let qa = quotient_action(pair, k1)?;
    let m = def1.nparams;
    // invariant parameter coordinates; require a weight-homogeneous basis
    let deg_f1 = k1.deg_f();
    let param_weight = |j: usize| deg_f1 - k1.ring.mono_degree(&def1.param_monos[j]);
    let mut b_weights = Vec::new();
    for v in &qa.fixed_basis {
        let supp: Vec<usize> = (0..m).filter(|&j| !v[j].is_zero()).collect();
        let w = param_weight(supp[0]);
        assert!(
            supp.iter().all(|&j| param_weight(j) == w),
            "fixed-space basis vector is weight-homogeneous"
        );
        b_weights.push(w);
    }
    let r = qa.fixed_basis.len();
    let mk_ring = |base: &Arc<RingSpec>| -> Arc<RingSpec> {
        let mut vars: Vec<String> = base.vars.clone();
        let mut weights = base.weights.clone();
        for (i, w) in b_weights.iter().enumerate() {
            vars.push(format!("b{}", i));
            weights.push(*w);
        }
        let var_refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        RingSpec::new(&var_refs, &weights)
    };
    let ring1 = mk_ring(&k1.ring);
    let ring2 = mk_ring(&k2.ring);
    // F_red: substitute a_j = sum_i (fixed_basis[i])_j b_i into F1
    let mut subs: Vec<WPoly> = (0..3).map(|i| WPoly::var(&ring1, i)).collect();
    for j in 0..m {
        let mut s = WPoly::zero(&ring1);
        for (i, v) in qa.fixed_basis.iter().enumerate() {
            if !v[j].is_zero() {
                s = s.add(&WPoly::var(&ring1, 3 + i).scale(&v[j]));
            }
        }
        subs.push(s);
    }
    let f_red = def1.big_f.substitute(&subs);
    let f_red_gb = buchberger(&[f_red.clone()]);
    // deformed generators: Q-averages of the lifted generators, reduced
    let quot = pair.quotient_order();
    let inv_q = CycloNum::from_rat(Rat::new(1.into(), (quot as i64).into()));
    let embedding: Vec<WPoly> = lift
        .images
        .iter()
        .map(|img| {
            let mut acc = WPoly::zero(&ring1);
            for (geom, mat) in qa.geom.iter().zip(&qa.param_matrices) {
                // tau_q on ring1: x,y,z by geom, b_i fixed (invariant)
                let mut tau_subs: Vec<WPoly> =
                    geom.iter().map(|g| embed_poly(g, &ring1)).collect();
                for i in 0..r {
                    tau_subs.push(WPoly::var(&ring1, 3 + i));
                }
                let _ = mat;
                acc = acc.add(&embed_poly(img, &ring1).substitute(&tau_subs));
            }
            normal_form(&acc.scale(&inv_q), &f_red_gb)
        })
        .collect();
    // solve for F': coefficients on monomials of weighted degree deg f2
    // in ring2, the parameter-free part pinned to f2
    let deg_f2 = k2.deg_f();
    let monos2 = monomials_of_degree(&ring2, deg_f2);
    let eval = |mono: &Mono| -> WPoly {
        // m(x', y', z', b) reduced mod F_red
        let mut imgs: Vec<WPoly> = embedding.clone();
        for i in 0..r {
            imgs.push(WPoly::var(&ring1, 3 + i));
        }
        let p = WPoly::monomial(&ring2, mono.clone(), CycloNum::one()).substitute(&imgs);
        normal_form(&p, &f_red_gb)
    };
    let mut pinned = WPoly::zero(&ring1);
    let mut free_monos = Vec::new();
    let mut free_evals = Vec::new();
    for mo in &monos2 {
        if mo[3..].iter().all(|&e| e == 0) {
            let c = k2.relation.coeff(&mo[..3].to_vec());
            if !c.is_zero() {
                pinned = pinned.add(&eval(mo).scale(&c));
            }
        } else {
            free_monos.push(mo.clone());
            free_evals.push(eval(mo));
        }
    }
    let mut support: Vec<Mono> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for p in free_evals.iter().chain(std::iter::once(&pinned)) {
        for (mo, _) in p.terms() {
            if seen.insert(mo.clone()) {
                support.push(mo.clone());
            }
        }
    }
    let mut a = ExactMatrix::zero(support.len().max(1), free_monos.len());
    let mut rhs = vec![CycloNum::zero(); support.len().max(1)];
    for (row, mo) in support.iter().enumerate() {
        for (col, p) in free_evals.iter().enumerate() {
            a.set(row, col, p.coeff(mo));
        }
        rhs[row] = -pinned.coeff(mo);
    }
    let coeffs = match solve_linear(&a, &rhs) {
        LinearSolution::Solution { particular, kernel } => {
            assert!(kernel.is_empty(), "pair relation is unique");
            particular
        }
        LinearSolution::Inconsistent => return Err(KleinError::ExpressionNotFound),
    };
    let mut big_f2 = embed_poly(&k2.relation, &ring2);
    for (mo, c) in free_monos.into_iter().zip(coeffs) {
        if !c.is_zero() {
            big_f2.add_term(mo, c);
        }
    }
    // certificate: F'(x', y', z'; b) lies in (F_red)
    let mut imgs: Vec<WPoly> = embedding.clone();
    for i in 0..r {
        imgs.push(WPoly::var(&ring1, 3 + i));
    }
    assert!(normal_form(&big_f2.substitute(&imgs), &f_red_gb).is_zero());
    Ok(PairDeformation {
        ring1,
        f_red,
        embedding,
        ring2,
        big_f2,
    })
}

/// Substitute rational parameter values into a deformation polynomial
/// whose ring is [x, y, z, params...]; returns a 3-variable polynomial.
pub fn specialize(big_f: &WPoly, xyz_ring: &Arc<RingSpec>, values: &[CycloNum]) -> WPoly {
    let mut imgs: Vec<WPoly> = (0..3).map(|i| WPoly::var(xyz_ring, i)).collect();
    for v in values {
        imgs.push(WPoly::constant(xyz_ring, v.clone()));
    }
    big_f.substitute(&imgs)
}

/// Flatness oracle for a specialized fiber: the staircase of the
/// principal ideal (F) counts monomials below the leading term; compare
/// cumulative counts against the cumulative Molien series of the group
/// up to degree `dmax`.
pub fn flat_fiber_check(f_spec: &WPoly, group: &crate::grp::FinSL2Group, dmax: usize) -> bool {
    let lead = match f_spec.leading() {
        Some((m, _)) => m.clone(),
        None => return false,
    };
    let mol = group.molien(dmax);
    let mut cum_mol = 0u64;
    let mut cum_stair = 0u64;
    for d in 0..=dmax {
        cum_mol += mol[d];
        cum_stair += monomials_of_degree(&f_spec.ring, d as u64)
            .into_iter()
            .filter(|m| !lead.iter().zip(m.iter()).all(|(a, b)| a <= b))
            .count() as u64;
        if cum_mol != cum_stair {
            return false;
        }
    }
    true
}

/// A Groebner basis for a single polynomial (any single generator is
/// already a Groebner basis of the ideal it generates).
pub fn principal_gb(f: &WPoly) -> GroebnerBasis {
    buchberger(&[f.clone()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{build_group, normal_pair, GroupSpec};
    use crate::klein::{build_kleinian, lift_psi};

    fn kd(spec: GroupSpec) -> KleinianData {
        build_kleinian(&build_group(spec)).unwrap()
    }

    fn int_terms(ring: &Arc<RingSpec>, terms: &[(&[u32], i64)]) -> WPoly {
        WPoly::from_terms(
            ring,
            terms
                .iter()
                .map(|(m, c)| (m.to_vec(), CycloNum::from_int(*c)))
                .collect(),
        )
    }

    #[test]
    fn universal_deformation_c4() {
        let k = kd(GroupSpec::Cyclic(4));
        let d = universal_deformation(&k);
        assert_eq!(d.nparams, 3);
        assert_eq!(d.ring.weights, vec![2, 4, 4, 8, 6, 4]);
        let expect = int_terms(
            &d.ring,
            &[
                (&[4, 0, 0, 0, 0, 0], 1),
                (&[0, 1, 1, 0, 0, 0], -1),
                (&[0, 0, 0, 1, 0, 0], -1),
                (&[1, 0, 0, 0, 1, 0], -1),
                (&[2, 0, 0, 0, 0, 1], -1),
            ],
        );
        assert_eq!(d.big_f, expect);
    }

    #[test]
    fn quotient_action_dihedral() {
        // C4 <| BD(2): the flip x -> -x, y <-> z, a_i -> (-1)^i a_i
        let pair = normal_pair(GroupSpec::Cyclic(4), GroupSpec::BinaryDihedral(2)).unwrap();
        let k1 = kd(GroupSpec::Cyclic(4));
        let qa = quotient_action(&pair, &k1).unwrap();
        assert!(qa.exact);
        assert_eq!(qa.lambda, vec![CycloNum::one(); 2]);
        let flip = &qa.geom[1];
        assert_eq!(flip[0], WPoly::var(&k1.ring, 0).neg());
        assert_eq!(flip[1], WPoly::var(&k1.ring, 2));
        assert_eq!(flip[2], WPoly::var(&k1.ring, 1));
        let m = &qa.param_matrices[1];
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i != j {
                    CycloNum::zero()
                } else if i == 1 {
                    -CycloNum::one()
                } else {
                    CycloNum::one()
                };
                assert_eq!(m.get(i, j), &expect);
            }
        }
        // I = (a_1); fixed space = span(a_0, a_2)
        assert_eq!(qa.fixed_basis.len(), 2);
        assert_eq!(qa.ideal_gens.len(), 1);
        let g = &qa.ideal_gens[0];
        assert!(g[0].is_zero() && !g[1].is_zero() && g[2].is_zero());
    }

    #[test]
    fn quotient_action_cyclic_trivial() {
        let pair = normal_pair(GroupSpec::Cyclic(2), GroupSpec::Cyclic(4)).unwrap();
        let k1 = kd(GroupSpec::Cyclic(2));
        let qa = quotient_action(&pair, &k1).unwrap();
        assert!(qa.exact);
        assert_eq!(qa.fixed_basis.len(), 1);
        assert!(qa.ideal_gens.is_empty());
    }

    #[test]
    fn pair_deformation_cyclic_goldens() {
        // C_n <| C_nk: F' = (X^n - sum a_i X^i)^k - YZ
        for (n, k) in [(2u64, 2u64), (2, 3), (3, 2)] {
            let pair = normal_pair(GroupSpec::Cyclic(n), GroupSpec::Cyclic(n * k)).unwrap();
            let k1 = kd(GroupSpec::Cyclic(n));
            let k2 = kd(GroupSpec::Cyclic(n * k));
            let lift = lift_psi(&k2, &k1).unwrap();
            let pd = pair_universal_deformation(&pair, &k1, &k2, &lift).unwrap();
            // embedding x -> x, y -> y^k, z -> z^k
            assert_eq!(pd.embedding[0], WPoly::var(&pd.ring1, 0));
            assert_eq!(pd.embedding[1], WPoly::var(&pd.ring1, 1).pow(k as u32));
            assert_eq!(pd.embedding[2], WPoly::var(&pd.ring1, 2).pow(k as u32));
            // golden relation
            let mut inner = WPoly::var(&pd.ring2, 0).pow(n as u32);
            for i in 0..(n - 1) as usize {
                let mut mono = vec![0u32; pd.ring2.nvars()];
                mono[0] = i as u32;
                mono[3 + i] = 1;
                inner.add_term(mono, -CycloNum::one());
            }
            let yz = WPoly::var(&pd.ring2, 1).mul(&WPoly::var(&pd.ring2, 2));
            let expect = inner.pow(k as u32).sub(&yz);
            assert_eq!(pd.big_f2, expect, "C{} in C{}", n, n * k);
        }
    }

    #[test]
    fn pair_deformation_dihedral_goldens() {
        // C_{2n} <| BD(n): x' = x^2, y' = y + z, z' = x(y - z), and
        // F' = XY^2 - Z^2 - 4X^{n+1} + 4 sum_j b_j X^{j+1}
        for n in 2u64..=4 {
            let pair =
                normal_pair(GroupSpec::Cyclic(2 * n), GroupSpec::BinaryDihedral(n)).unwrap();
            let k1 = kd(GroupSpec::Cyclic(2 * n));
            let k2 = kd(GroupSpec::BinaryDihedral(n));
            let lift = lift_psi(&k2, &k1).unwrap();
            let pd = pair_universal_deformation(&pair, &k1, &k2, &lift).unwrap();
            let r1 = &pd.ring1;
            assert_eq!(pd.embedding[0], WPoly::var(r1, 0).pow(2));
            assert_eq!(pd.embedding[1], WPoly::var(r1, 1).add(&WPoly::var(r1, 2)));
            assert_eq!(
                pd.embedding[2],
                WPoly::var(r1, 0).mul(&WPoly::var(r1, 1).sub(&WPoly::var(r1, 2)))
            );
            let nv = pd.ring2.nvars();
            assert_eq!(nv, 3 + n as usize); // invariant parameters b_0..b_{n-1}
            let mut expect = int_terms(
                &pd.ring2,
                &[
                    (&{
                        let mut m = vec![0u32; nv];
                        m[0] = 1;
                        m[1] = 2;
                        m
                    }, 1),
                    (&{
                        let mut m = vec![0u32; nv];
                        m[2] = 2;
                        m
                    }, -1),
                    (&{
                        let mut m = vec![0u32; nv];
                        m[0] = n as u32 + 1;
                        m
                    }, -4),
                ]
                .iter()
                .map(|(m, c)| (m.as_slice(), *c))
                .collect::<Vec<_>>(),
            );
            for j in 0..n as usize {
                let mut m = vec![0u32; nv];
                m[0] = j as u32 + 1;
                m[3 + j] = 1;
                expect.add_term(m, CycloNum::from_int(4));
            }
            assert_eq!(pd.big_f2, expect, "C{} in BD({})", 2 * n, n);
        }
    }

    #[test]
    fn specialization_is_flat() {
        let g = build_group(GroupSpec::Cyclic(4));
        let k = build_kleinian(&g).unwrap();
        let d = universal_deformation(&k);
        for vals in [[1i64, 0, 0], [2, -1, 3], [0, 0, 5]] {
            let values: Vec<CycloNum> = vals.iter().map(|&v| CycloNum::from_int(v)).collect();
            let f = specialize(&d.big_f, &k.ring, &values);
            assert!(flat_fiber_check(&f, &g, 12));
        }
        // zero specialization recovers the undeformed relation
        let zero: Vec<CycloNum> = vec![CycloNum::zero(); 3];
        assert_eq!(specialize(&d.big_f, &k.ring, &zero), k.relation);
    }
}
