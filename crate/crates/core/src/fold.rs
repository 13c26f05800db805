//! McKay graphs, their ADE classification, diagram automorphisms induced
//! by a normal pair, folded root systems, and the parameter group H acting
//! on sigma-fixed parameter vectors.

use crate::exact::{CycloNum, Rat};
use crate::grp::{char_inner, FinSL2Group, NormalPair};
use num::{One, Signed, Zero};
use std::collections::{HashSet, VecDeque};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{}", n),
            DynkinType::D(n) => write!(f, "D{}", n),
            DynkinType::E(n) => write!(f, "E{}", n),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoldedType {
    SimplyLaced(DynkinType),
    B(usize),
    C(usize),
    F4,
    G2,
    /// non-reduced: both beta and 2 beta occur
    BC(usize),
}

impl fmt::Display for FoldedType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FoldedType::SimplyLaced(t) => write!(f, "{}", t),
            FoldedType::B(n) => write!(f, "B{}", n),
            FoldedType::C(n) => write!(f, "C{}", n),
            FoldedType::F4 => write!(f, "F4"),
            FoldedType::G2 => write!(f, "G2"),
            FoldedType::BC(n) => write!(f, "BC{}", n),
        }
    }
}

/// McKay graph of a group in canonical node order.
#[derive(Debug)]
pub struct McKayData {
    pub dynkin: DynkinType,
    /// Cartan matrix 2I - adjacency, canonical node order
    pub cartan: Vec<Vec<i64>>,
    /// canonical node index -> character table row (nontrivial irreps)
    pub node_irreps: Vec<usize>,
}

fn small_nonneg_int(c: &CycloNum) -> u64 {
    let r = c.as_rational().expect("multiplicity is rational");
    assert!(r.denom().is_one() && !r.numer().is_negative());
    u64::try_from(r.numer()).unwrap()
}

/// The McKay graph on nontrivial irreducibles, edges given by the
/// multiplicity of chi_i in taut (x) chi_j, classified as an ADE diagram
/// with a deterministic labeling.
pub fn mckay(group: &FinSL2Group) -> McKayData {
    let rows = group.char_table.len();
    let r = rows - 1; // nontrivial irreps
    let mut adj = vec![vec![false; r]; r];
    for i in 0..r {
        for j in 0..r {
            let prod: Vec<CycloNum> = (0..group.num_classes())
                .map(|k| &group.taut_values[k] * &group.char_table[j + 1][k])
                .collect();
            let m = small_nonneg_int(&char_inner(group, &prod, &group.char_table[i + 1]));
            assert!(m <= 1, "McKay graph has simple edges");
            if i == j {
                assert_eq!(m, 0, "McKay graph has no loops off the affine node");
            }
            adj[i][j] = m == 1;
        }
    }
    for i in 0..r {
        for j in 0..r {
            assert_eq!(adj[i][j], adj[j][i], "McKay graph is undirected");
        }
    }
    let degree = |i: usize| (0..r).filter(|&j| adj[i][j]).count();
    // walk from `from` away from `prev` to the leaf
    let walk_arm = |mut prev: usize, mut cur: usize| -> Vec<usize> {
        let mut arm = vec![cur];
        loop {
            let next: Vec<usize> = (0..r).filter(|&j| adj[cur][j] && j != prev).collect();
            match next.len() {
                0 => return arm,
                1 => {
                    prev = cur;
                    cur = next[0];
                    arm.push(cur);
                }
                _ => panic!("arm passes through a branch node"),
            }
        }
    };
    let branches: Vec<usize> = (0..r).filter(|&i| degree(i) >= 3).collect();
    let (dynkin, order) = if branches.is_empty() {
        // path graph: A_r
        let order = if r == 1 {
            vec![0]
        } else {
            let start = (0..r).find(|&i| degree(i) == 1).expect("path endpoint");
            let next = (0..r).find(|&j| adj[start][j]).unwrap();
            let mut o = vec![start];
            o.extend(walk_arm(start, next));
            o
        };
        assert_eq!(order.len(), r, "connected path");
        (DynkinType::A(r), order)
    } else {
        assert_eq!(branches.len(), 1, "single branch node");
        let b = branches[0];
        assert_eq!(degree(b), 3);
        let mut arms: Vec<Vec<usize>> = (0..r)
            .filter(|&j| adj[b][j])
            .map(|j| walk_arm(b, j))
            .collect();
        arms.sort_by_key(|a| (std::cmp::Reverse(a.len()), *a.last().unwrap()));
        let mut lens: Vec<usize> = arms.iter().map(|a| a.len()).collect();
        lens.sort();
        let dynkin = match lens.as_slice() {
            [1, 1, _] => DynkinType::D(r),
            [1, 2, 2] => DynkinType::E(6),
            [1, 2, 3] => DynkinType::E(7),
            [1, 2, 4] => DynkinType::E(8),
            _ => panic!("not an ADE diagram"),
        };
        let mut order: Vec<usize> = arms[0].iter().rev().copied().collect();
        order.push(b);
        order.extend(arms[1].iter());
        order.extend(arms[2].iter());
        assert_eq!(order.len(), r);
        (dynkin, order)
    };
    let mut cartan = vec![vec![0i64; r]; r];
    for i in 0..r {
        for j in 0..r {
            cartan[i][j] = if i == j {
                2
            } else if adj[order[i]][order[j]] {
                -1
            } else {
                0
            };
        }
    }
    McKayData {
        dynkin,
        cartan,
        node_irreps: order.iter().map(|&i| i + 1).collect(),
    }
}

/// Node permutations of the McKay graph induced by conjugation with the
/// coset representatives of a normal pair (deduplicated, identity
/// included).
pub fn diagram_automorphisms(pair: &NormalPair, mk: &McKayData) -> Vec<Vec<usize>> {
    let g1 = &pair.g1;
    let rows = g1.char_table.len();
    let r = mk.node_irreps.len();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for action in &pair.class_action {
        // irrep permutation: chi_i composed with conjugation
        let mut irrep_perm = vec![0usize; rows];
        for i in 0..rows {
            let moved: Vec<CycloNum> = (0..g1.num_classes())
                .map(|k| g1.char_table[i][action[k]].clone())
                .collect();
            let j = (0..rows)
                .find(|&j| g1.char_table[j] == moved)
                .expect("conjugated character is a character");
            irrep_perm[i] = j;
        }
        let inv_node: std::collections::HashMap<usize, usize> = mk
            .node_irreps
            .iter()
            .enumerate()
            .map(|(n, &i)| (i, n))
            .collect();
        let perm: Vec<usize> = (0..r)
            .map(|n| inv_node[&irrep_perm[mk.node_irreps[n]]])
            .collect();
        if !out.contains(&perm) {
            out.push(perm);
        }
    }
    out
}

/// A simply-laced root system in simple-root coordinates; the bilinear
/// form is v^T C w (so every root has squared length 2).
#[derive(Debug)]
pub struct RootSystem {
    pub cartan: Vec<Vec<i64>>,
    pub roots: Vec<Vec<Rat>>,
}

fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn form(&self, v: &[Rat], w: &[Rat]) -> Rat {
        let mut s = Rat::zero();
        for i in 0..v.len() {
            for j in 0..w.len() {
                if self.cartan[i][j] != 0 {
                    s += &v[i] * &w[j] * rat(self.cartan[i][j]);
                }
            }
        }
        s
    }

    /// s_beta(v) = v - 2 (v, beta) / (beta, beta) * beta
    pub fn reflect(&self, beta: &[Rat], v: &[Rat]) -> Vec<Rat> {
        let c = rat(2) * self.form(v, beta) / self.form(beta, beta);
        v.iter()
            .zip(beta)
            .map(|(vi, bi)| vi - &c * bi)
            .collect()
    }

    /// matrix of s_beta in simple-root coordinates
    pub fn reflection_matrix(&self, beta: &[Rat]) -> Vec<Vec<Rat>> {
        let n = self.rank();
        let mut m = vec![vec![Rat::zero(); n]; n];
        for j in 0..n {
            let mut e = vec![Rat::zero(); n];
            e[j] = Rat::one();
            let col = self.reflect(beta, &e);
            for i in 0..n {
                m[i][j] = col[i].clone();
            }
        }
        m
    }
}

fn vec_key(v: &[Rat]) -> String {
    v.iter()
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Generate all roots by closing the simple roots under simple
/// reflections.
pub fn root_system(cartan: &[Vec<i64>]) -> RootSystem {
    let n = cartan.len();
    let rs = RootSystem {
        cartan: cartan.to_vec(),
        roots: Vec::new(),
    };
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    let mut roots = Vec::new();
    for i in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[i] = Rat::one();
        if seen.insert(vec_key(&e)) {
            queue.push_back(e.clone());
            roots.push(e);
        }
    }
    let simples: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut e = vec![Rat::zero(); n];
            e[i] = Rat::one();
            e
        })
        .collect();
    while let Some(v) = queue.pop_front() {
        for s in &simples {
            let w = rs.reflect(s, &v);
            if seen.insert(vec_key(&w)) {
                queue.push_back(w.clone());
                roots.push(w);
            }
        }
        let neg: Vec<Rat> = v.iter().map(|x| -x).collect();
        if seen.insert(vec_key(&neg)) {
            queue.push_back(neg.clone());
            roots.push(neg);
        }
    }
    RootSystem {
        cartan: cartan.to_vec(),
        roots,
    }
}

/// A fold of a simply-laced root system by a group of diagram
/// automorphisms.
#[derive(Debug)]
pub struct FoldData {
    /// node orbits under the automorphism group
    pub orbits: Vec<Vec<usize>>,
    /// orbit averages of the simple roots (simple system of the fold)
    pub folded_simples: Vec<Vec<Rat>>,
    /// all distinct nonzero orbit averages of roots
    pub folded_roots: Vec<Vec<Rat>>,
    pub folded_type: FoldedType,
    /// generators of H as matrices in simple-root coordinates
    pub h_generators: Vec<Vec<Vec<Rat>>>,
}

fn close_permutations(perms: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..n).collect();
    let mut all = vec![id];
    let mut seen: HashSet<Vec<usize>> = all.iter().cloned().collect();
    let mut queue: VecDeque<Vec<usize>> = all.clone().into();
    while let Some(p) = queue.pop_front() {
        for g in perms {
            let q: Vec<usize> = (0..n).map(|i| g[p[i]]).collect();
            if seen.insert(q.clone()) {
                all.push(q.clone());
                queue.push_back(q);
            }
        }
    }
    all
}

/// Apply a node permutation to a vector in simple-root coordinates:
/// alpha_i -> alpha_{p(i)}.
fn permute_vec(p: &[usize], v: &[Rat]) -> Vec<Rat> {
    let mut w = vec![Rat::zero(); v.len()];
    for i in 0..v.len() {
        w[p[i]] = v[i].clone();
    }
    w
}

pub fn fold(rs: &RootSystem, perms: &[Vec<usize>]) -> FoldData {
    let n = rs.rank();
    let group = close_permutations(perms, n);
    // node orbits
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let mut orb: Vec<usize> = group.iter().map(|p| p[i]).collect();
        orb.sort();
        orb.dedup();
        for &j in &orb {
            orbit_of[j] = orbits.len();
        }
        orbits.push(orb);
    }
    let average = |v: &[Rat]| -> Vec<Rat> {
        let mut s = vec![Rat::zero(); n];
        for p in &group {
            let w = permute_vec(p, v);
            for i in 0..n {
                s[i] += &w[i];
            }
        }
        let c = Rat::new(1.into(), (group.len() as i64).into());
        s.iter().map(|x| x * &c).collect()
    };
    let simple = |i: usize| -> Vec<Rat> {
        let mut e = vec![Rat::zero(); n];
        e[i] = Rat::one();
        e
    };
    let folded_simples: Vec<Vec<Rat>> = orbits.iter().map(|o| average(&simple(o[0]))).collect();
    let mut folded_roots: Vec<Vec<Rat>> = Vec::new();
    let mut seen = HashSet::new();
    for r in &rs.roots {
        let a = average(r);
        if a.iter().all(|x| x.is_zero()) {
            continue;
        }
        if seen.insert(vec_key(&a)) {
            folded_roots.push(a);
        }
    }
    // generators of H, one per node orbit
    let mut h_generators = Vec::new();
    for orb in &orbits {
        let pairwise_orthogonal = orb
            .iter()
            .enumerate()
            .all(|(k, &i)| orb[k + 1..].iter().all(|&j| rs.cartan[i][j] == 0));
        let m = if orb.len() == 1 {
            rs.reflection_matrix(&simple(orb[0]))
        } else if pairwise_orthogonal {
            let mut m = identity_matrix(n);
            for &i in orb {
                m = mat_mul_rat(&rs.reflection_matrix(&simple(i)), &m);
            }
            m
        } else if orb.len() == 2 && rs.cartan[orb[0]][orb[1]] == -1 {
            let mut beta = vec![Rat::zero(); n];
            beta[orb[0]] = Rat::one();
            beta[orb[1]] = Rat::one();
            rs.reflection_matrix(&beta)
        } else {
            panic!("unsupported node orbit shape");
        };
        h_generators.push(m);
    }
    let folded_type = classify_fold(rs, orbits.len(), &folded_roots);
    FoldData {
        orbits,
        folded_simples,
        folded_roots,
        folded_type,
        h_generators,
    }
}

fn classify_fold(rs: &RootSystem, rank: usize, roots: &[Vec<Rat>]) -> FoldedType {
    let keys: HashSet<String> = roots.iter().map(|r| vec_key(r)).collect();
    let doubled = roots.iter().any(|r| {
        let d: Vec<Rat> = r.iter().map(|x| x * rat(2)).collect();
        keys.contains(&vec_key(&d))
    });
    if doubled {
        return FoldedType::BC(rank);
    }
    let mut lengths: Vec<Rat> = roots.iter().map(|r| rs.form(r, r)).collect();
    lengths.sort();
    lengths.dedup();
    let count = roots.len();
    match lengths.len() {
        1 => {
            if count == 72 && rank == 6 {
                FoldedType::SimplyLaced(DynkinType::E(6))
            } else if count == 126 && rank == 7 {
                FoldedType::SimplyLaced(DynkinType::E(7))
            } else if count == 240 && rank == 8 {
                FoldedType::SimplyLaced(DynkinType::E(8))
            } else if count == rank * (rank + 1) {
                FoldedType::SimplyLaced(DynkinType::A(rank))
            } else if count == 2 * rank * (rank - 1) {
                FoldedType::SimplyLaced(DynkinType::D(rank))
            } else {
                panic!("unrecognized simply-laced fold")
            }
        }
        2 => {
            let short = &lengths[0];
            let n_short = roots.iter().filter(|r| &rs.form(r, r) == short).count();
            if rank == 2 && count == 12 {
                FoldedType::G2
            } else if rank == 4 && count == 48 {
                FoldedType::F4
            } else if rank == 2 && count == 8 {
                FoldedType::C(2)
            } else if count == 2 * rank * rank {
                if n_short == 2 * rank {
                    FoldedType::B(rank)
                } else {
                    FoldedType::C(rank)
                }
            } else {
                panic!("unrecognized two-length fold")
            }
        }
        _ => panic!("more than two root lengths without doubling"),
    }
}

fn identity_matrix(n: usize) -> Vec<Vec<Rat>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect()
}

fn mat_mul_rat(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = a.len();
    let mut c = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                c[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    c
}

pub fn mat_apply(m: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    (0..m.len())
        .map(|i| {
            let mut s = Rat::zero();
            for j in 0..v.len() {
                s += &m[i][j] * &v[j];
            }
            s
        })
        .collect()
}

fn mat_key(m: &[Vec<Rat>]) -> String {
    m.iter().map(|r| vec_key(r)).collect::<Vec<_>>().join(";")
}

/// Close a set of rational matrices under multiplication.
pub fn enumerate_group(gens: &[Vec<Vec<Rat>>]) -> Vec<Vec<Vec<Rat>>> {
    let n = gens.first().map(|m| m.len()).unwrap_or(0);
    let mut all = vec![identity_matrix(n)];
    let mut seen: HashSet<String> = all.iter().map(|m| mat_key(m)).collect();
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        let cur = all[i].clone();
        for g in gens {
            let prod = mat_mul_rat(g, &cur);
            if seen.insert(mat_key(&prod)) {
                all.push(prod);
                queue.push_back(all.len() - 1);
            }
        }
    }
    all
}

/// A parameter point in simple-root coordinates with rational real and
/// imaginary parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamPoint {
    pub re: Vec<Rat>,
    pub im: Vec<Rat>,
}

impl ParamPoint {
    pub fn apply(&self, m: &[Vec<Rat>]) -> ParamPoint {
        ParamPoint {
            re: mat_apply(m, &self.re),
            im: mat_apply(m, &self.im),
        }
    }
}

/// The unique dominant orbit representative of a point under the
/// reflection group with the given simple system: first make the real
/// part dominant, then the imaginary part dominant within the
/// stabilizer of the real part (the reflections orthogonal to it).
pub fn dominant_representative(
    rs: &RootSystem,
    simples: &[Vec<Rat>],
    p: &ParamPoint,
) -> ParamPoint {
    let mut re = p.re.clone();
    let mut im = p.im.clone();
    loop {
        let mut moved = false;
        for s in simples {
            if rs.form(&re, s).is_negative() {
                re = rs.reflect(s, &re);
                im = rs.reflect(s, &im);
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    loop {
        let mut moved = false;
        for s in simples {
            if rs.form(&re, s).is_zero() && rs.form(&im, s).is_negative() {
                im = rs.reflect(s, &im);
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    ParamPoint { re, im }
}

fn unit_simples(n: usize) -> Vec<Vec<Rat>> {
    (0..n)
        .map(|i| {
            let mut e = vec![Rat::zero(); n];
            e[i] = Rat::one();
            e
        })
        .collect()
}

/// Equivalence under the full Weyl group of the unfolded system.
pub fn w_orbit_equivalent(rs: &RootSystem, a: &ParamPoint, b: &ParamPoint) -> bool {
    let simples = unit_simples(rs.rank());
    dominant_representative(rs, &simples, a) == dominant_representative(rs, &simples, b)
}

/// Equivalence under the parameter group H of a fold.
pub fn h_orbit_equivalent(rs: &RootSystem, fd: &FoldData, a: &ParamPoint, b: &ParamPoint) -> bool {
    dominant_representative(rs, &fd.folded_simples, a)
        == dominant_representative(rs, &fd.folded_simples, b)
}

/// Brute-force cross-check: is b in the enumerated H-orbit of a?
pub fn h_orbit_contains(h: &[Vec<Vec<Rat>>], a: &ParamPoint, b: &ParamPoint) -> bool {
    h.iter().any(|m| &a.apply(m) == b)
}

/// A random sigma-fixed parameter point: coordinates constant on node
/// orbits, numerators in -9..=9, denominators in 1..=4.
pub fn sample_fixed_point<R: rand::Rng>(orbits: &[Vec<usize>], rank: usize, rng: &mut R) -> ParamPoint {
    let draw = |rng: &mut R| -> Vec<Rat> {
        let mut v = vec![Rat::zero(); rank];
        for orb in orbits {
            let x = Rat::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=4).into());
            for &i in orb {
                v[i] = x.clone();
            }
        }
        v
    };
    let re = draw(rng);
    let im = draw(rng);
    ParamPoint { re, im }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{build_group, normal_pair, GroupSpec};
    use rand::{Rng, SeedableRng};

    fn flip(n: usize) -> Vec<usize> {
        (0..n).rev().collect()
    }

    fn a_cartan(n: usize) -> Vec<Vec<i64>> {
        let mut c = vec![vec![0i64; n]; n];
        for i in 0..n {
            c[i][i] = 2;
            if i + 1 < n {
                c[i][i + 1] = -1;
                c[i + 1][i] = -1;
            }
        }
        c
    }

    fn d4_cartan() -> Vec<Vec<i64>> {
        // canonical order: leaf, center, leaf, leaf
        vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, -1],
            vec![0, -1, 2, 0],
            vec![0, -1, 0, 2],
        ]
    }

    #[test]
    fn mckay_types() {
        for (spec, expect) in [
            (GroupSpec::Cyclic(2), DynkinType::A(1)),
            (GroupSpec::Cyclic(4), DynkinType::A(3)),
            (GroupSpec::BinaryDihedral(2), DynkinType::D(4)),
            (GroupSpec::BinaryDihedral(3), DynkinType::D(5)),
            (GroupSpec::BinaryTetrahedral, DynkinType::E(6)),
            (GroupSpec::BinaryOctahedral, DynkinType::E(7)),
            (GroupSpec::BinaryIcosahedral, DynkinType::E(8)),
        ] {
            let g = build_group(spec);
            let mk = mckay(&g);
            assert_eq!(mk.dynkin, expect, "{}", spec);
        }
    }

    #[test]
    fn root_counts() {
        assert_eq!(root_system(&a_cartan(3)).roots.len(), 12);
        assert_eq!(root_system(&a_cartan(7)).roots.len(), 56);
        assert_eq!(root_system(&d4_cartan()).roots.len(), 24);
        let e6 = mckay(&build_group(GroupSpec::BinaryTetrahedral)).cartan;
        assert_eq!(root_system(&e6).roots.len(), 72);
    }

    #[test]
    fn fold_a3_flip_is_c2() {
        let rs = root_system(&a_cartan(3));
        let fd = fold(&rs, &[flip(3)]);
        assert_eq!(fd.folded_type, FoldedType::C(2));
        assert_eq!(fd.folded_roots.len(), 8);
        assert_eq!(enumerate_group(&fd.h_generators).len(), 8);
    }

    #[test]
    fn fold_a2_flip_is_bc1() {
        let rs = root_system(&a_cartan(2));
        let fd = fold(&rs, &[flip(2)]);
        assert_eq!(fd.folded_type, FoldedType::BC(1));
        assert_eq!(fd.folded_roots.len(), 4);
        assert_eq!(enumerate_group(&fd.h_generators).len(), 2);
    }

    #[test]
    fn fold_orders_match_hyperoctahedral() {
        // A_{2n-1} / flip -> C_n with |H| = 2^n n!
        for (n, expect) in [(2usize, 8usize), (3, 48), (4, 384)] {
            let rs = root_system(&a_cartan(2 * n - 1));
            let fd = fold(&rs, &[flip(2 * n - 1)]);
            assert_eq!(fd.folded_type, FoldedType::C(n));
            assert_eq!(enumerate_group(&fd.h_generators).len(), expect, "n={}", n);
        }
    }

    #[test]
    fn fold_d4_triality_is_g2() {
        let rs = root_system(&d4_cartan());
        // full S3 on the three leaves 0, 2, 3
        let fd = fold(&rs, &[vec![2, 1, 3, 0], vec![2, 1, 0, 3]]);
        assert_eq!(fd.folded_type, FoldedType::G2);
        assert_eq!(fd.folded_roots.len(), 12);
        assert_eq!(enumerate_group(&fd.h_generators).len(), 12);
        // the cyclic subgroup gives the same fold
        let fd3 = fold(&rs, &[vec![2, 1, 3, 0]]);
        assert_eq!(fd3.folded_type, FoldedType::G2);
    }

    #[test]
    fn fold_d4_single_flip_is_b3() {
        let rs = root_system(&d4_cartan());
        let fd = fold(&rs, &[vec![0, 1, 3, 2]]);
        assert_eq!(fd.folded_type, FoldedType::B(3));
        assert_eq!(fd.folded_roots.len(), 18);
        assert_eq!(enumerate_group(&fd.h_generators).len(), 48);
    }

    #[test]
    fn fold_e6_flip_is_f4() {
        let e6 = mckay(&build_group(GroupSpec::BinaryTetrahedral)).cartan;
        let rs = root_system(&e6);
        // canonical E6 order: arm, arm, branch, arm, arm, short leaf
        let fd = fold(&rs, &[vec![4, 3, 2, 1, 0, 5]]);
        assert_eq!(fd.folded_type, FoldedType::F4);
        assert_eq!(fd.folded_roots.len(), 48);
        assert_eq!(enumerate_group(&fd.h_generators).len(), 1152);
    }

    #[test]
    fn pair_automorphisms() {
        // C4 <| BD(2): the quotient flips the A3 diagram
        let pair = normal_pair(GroupSpec::Cyclic(4), GroupSpec::BinaryDihedral(2)).unwrap();
        let mk = mckay(&pair.g1);
        let perms = diagram_automorphisms(&pair, &mk);
        assert!(perms.contains(&vec![2, 1, 0]));
        // BD(2) <| 2T: the quotient acts on D4 by triality
        let pair = normal_pair(GroupSpec::BinaryDihedral(2), GroupSpec::BinaryTetrahedral).unwrap();
        let mk = mckay(&pair.g1);
        assert_eq!(mk.dynkin, DynkinType::D(4));
        let perms = diagram_automorphisms(&pair, &mk);
        let rs = root_system(&mk.cartan);
        let fd = fold(&rs, &perms);
        assert_eq!(fd.folded_type, FoldedType::G2);
        // 2T <| 2O: the quotient flips E6
        let pair = normal_pair(GroupSpec::BinaryTetrahedral, GroupSpec::BinaryOctahedral).unwrap();
        let mk = mckay(&pair.g1);
        let perms = diagram_automorphisms(&pair, &mk);
        let rs = root_system(&mk.cartan);
        let fd = fold(&rs, &perms);
        assert_eq!(fd.folded_type, FoldedType::F4);
    }

    #[test]
    fn w_equivalence_matches_h_equivalence() {
        let rs = root_system(&a_cartan(3));
        let fd = fold(&rs, &[flip(3)]);
        let h = enumerate_group(&fd.h_generators);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let a = sample_fixed_point(&fd.orbits, 3, &mut rng);
            // half the time a genuine H-translate, half an independent point
            let b = if rng.gen_bool(0.5) {
                let m = &h[rng.gen_range(0..h.len())];
                a.apply(m)
            } else {
                sample_fixed_point(&fd.orbits, 3, &mut rng)
            };
            let w_eq = w_orbit_equivalent(&rs, &a, &b);
            let h_eq = h_orbit_equivalent(&rs, &fd, &a, &b);
            assert_eq!(w_eq, h_eq);
            assert_eq!(h_eq, h_orbit_contains(&h, &a, &b));
        }
    }

    #[test]
    fn dominant_representative_is_orbit_invariant() {
        let rs = root_system(&a_cartan(2));
        let fd = fold(&rs, &[flip(2)]);
        let h = enumerate_group(&fd.h_generators);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..25 {
            let a = sample_fixed_point(&fd.orbits, 2, &mut rng);
            for m in &h {
                let b = a.apply(m);
                assert_eq!(
                    dominant_representative(&rs, &fd.folded_simples, &a),
                    dominant_representative(&rs, &fd.folded_simples, &b)
                );
            }
        }
    }
}
