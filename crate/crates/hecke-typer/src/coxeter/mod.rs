//! Brute-force verification oracle: realizes each irreducible type as a
//! concrete group, enumerates it by Cayley-graph BFS (layer = Coxeter
//! length), and derives element orders and Sylow cyclicity from the
//! enumeration.
//!
//! Crystallographic types act by integer reflection matrices on the root
//! lattice in the simple-root basis. The full root system is closed off
//! first; after that the whole enumeration is permutation composition on
//! root indices, and an element is canonically encoded by the tuple of
//! images of the simple roots (a bijective, fixed-width re-encoding of its
//! matrix). Dihedral types `I2(m)` outside {3, 4, 6} have no such integer
//! matrix realization and use a rotation/reflection encoding instead.

pub mod gf2;

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_integer::Integer;

use crate::poly::IntPolynomial;
use crate::weyl::IrreducibleType;

/// Default BFS cap; `HECKE_TYPER_MAX_ELEMENTS` overrides it in the CLI.
pub const DEFAULT_ELEMENT_CAP: u64 = 4_000_000;

// Canonical element key: images of the basis points, zero-padded. Ten slots
// bound the enumerable rank; anything larger blows past any sane cap anyway.
const KEY_SLOTS: usize = 10;
type Key = [u16; KEY_SLOTS];

pub type ElementId = u32;

const NO_PARENT: u8 = u8::MAX;

/// Small square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    data: Vec<i64>,
}

impl Matrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Matrix { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn at(&self, row: usize, col: usize) -> i64 {
        self.data[row * self.n + col]
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * rhs.at(k, j);
                }
            }
        }
        Matrix { n, data }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.at(i, j) * v[j]).sum())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.n)
    }
}

/// Cartan matrix with entries `c[i][j] = <alpha_i, alpha_j^vee>`.
pub(crate) fn cartan_matrix(t: IrreducibleType) -> Vec<Vec<i64>> {
    use IrreducibleType::*;
    let rank = t.rank();
    let mut c = vec![vec![0i64; rank]; rank];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let link = |c: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match t {
        A { rank } => {
            for i in 0..rank - 1 {
                link(&mut c, i, i + 1);
            }
        }
        B { rank } => {
            for i in 0..rank - 1 {
                link(&mut c, i, i + 1);
            }
            // last node is the short root
            c[rank - 2][rank - 1] = -2;
        }
        D { rank } => {
            if rank >= 3 {
                for i in 0..rank - 2 {
                    link(&mut c, i, i + 1);
                }
                link(&mut c, rank - 3, rank - 1);
            }
            // rank 2 is A1 x A1: no edges
        }
        E { rank } => {
            link(&mut c, 0, 2);
            link(&mut c, 1, 3);
            for i in 2..rank - 1 {
                link(&mut c, i, i + 1);
            }
        }
        F4 => {
            link(&mut c, 0, 1);
            link(&mut c, 2, 3);
            c[1][2] = -2;
            c[2][1] = -1;
        }
        G2 => {
            c[0][1] = -1;
            c[1][0] = -3;
        }
        I2 { m } => match m {
            3 => return cartan_matrix(A { rank: 2 }),
            4 => return cartan_matrix(B { rank: 2 }),
            6 => return cartan_matrix(G2),
            _ => unreachable!("no integer Cartan matrix for I2({m})"),
        },
    }
    c
}

/// `s_j(alpha_i) = alpha_i - c[i][j] alpha_j`, written as a matrix acting on
/// simple-root coordinates: only the j-th coordinate of the image changes.
fn reflection_matrices(cartan: &[Vec<i64>]) -> Vec<Matrix> {
    let rank = cartan.len();
    (0..rank)
        .map(|j| {
            let mut m = Matrix::identity(rank);
            for (i, row) in cartan.iter().enumerate() {
                m.data[j * rank + i] -= row[j];
            }
            m
        })
        .collect()
}

#[derive(Debug, Clone)]
pub enum RealizationKind {
    /// Simple reflections as integer matrices in the simple-root basis.
    Matrix { generators: Vec<Matrix> },
    /// Rotation/reflection encoding of the dihedral group of order 2m.
    Dihedral { m: usize },
}

#[derive(Debug, Clone)]
pub struct ReflectionRealization {
    ty: IrreducibleType,
    kind: RealizationKind,
    expected_order: BigUint,
    coxeter_matrix: Vec<Vec<usize>>,
}

/// Builds the reflection realization of an irreducible type. `I2(m)` gets a
/// matrix realization only for m in {3, 4, 6}; other m fall back to the
/// dihedral encoding.
pub fn realize(t: IrreducibleType) -> ReflectionRealization {
    let kind = match t {
        IrreducibleType::I2 { m } if !matches!(m, 3 | 4 | 6) => RealizationKind::Dihedral { m },
        _ => RealizationKind::Matrix {
            generators: reflection_matrices(&cartan_matrix(t)),
        },
    };
    let coxeter_matrix = match &kind {
        RealizationKind::Matrix { .. } => {
            let c = cartan_matrix(t);
            let rank = c.len();
            (0..rank)
                .map(|i| {
                    (0..rank)
                        .map(|j| {
                            if i == j {
                                1
                            } else {
                                match c[i][j] * c[j][i] {
                                    0 => 2,
                                    1 => 3,
                                    2 => 4,
                                    3 => 6,
                                    other => unreachable!("bad Cartan product {other}"),
                                }
                            }
                        })
                        .collect()
                })
                .collect()
        }
        RealizationKind::Dihedral { m } => vec![vec![1, *m], vec![*m, 1]],
    };
    ReflectionRealization {
        ty: t,
        kind,
        expected_order: t.order(),
        coxeter_matrix,
    }
}

impl ReflectionRealization {
    pub fn irreducible_type(&self) -> IrreducibleType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank()
    }

    pub fn kind(&self) -> &RealizationKind {
        &self.kind
    }

    pub fn generator_matrices(&self) -> Option<&[Matrix]> {
        match &self.kind {
            RealizationKind::Matrix { generators } => Some(generators),
            RealizationKind::Dihedral { .. } => None,
        }
    }

    pub fn expected_order(&self) -> &BigUint {
        &self.expected_order
    }

    /// Coxeter exponents m_ij of the presentation this realization must
    /// satisfy: generators are involutions and (s_i s_j)^{m_ij} = 1.
    pub fn coxeter_matrix(&self) -> &[Vec<usize>] {
        &self.coxeter_matrix
    }

    /// Checks the defining relations directly on the realization.
    pub fn satisfies_coxeter_relations(&self) -> bool {
        match &self.kind {
            RealizationKind::Matrix { generators } => {
                let rank = generators.len();
                for i in 0..rank {
                    for j in 0..rank {
                        let product = generators[i].mul(&generators[j]);
                        let mut acc = Matrix::identity(product.size());
                        for _ in 0..self.coxeter_matrix[i][j] {
                            acc = acc.mul(&product);
                        }
                        if !acc.is_identity() {
                            return false;
                        }
                    }
                }
                true
            }
            RealizationKind::Dihedral { m } => {
                let s = DihedralElement {
                    rotation: 0,
                    reflected: true,
                };
                let t = DihedralElement {
                    rotation: 1,
                    reflected: true,
                };
                let id = DihedralElement::identity();
                s.mul(s, *m) == id
                    && t.mul(t, *m) == id
                    && (0..*m).fold(id, |acc, _| acc.mul(s.mul(t, *m), *m)) == id
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct DihedralElement {
    rotation: usize,
    reflected: bool,
}

impl DihedralElement {
    fn identity() -> Self {
        DihedralElement {
            rotation: 0,
            reflected: false,
        }
    }

    // r^a sigma^e * r^b sigma^f = r^(a + (-1)^e b) sigma^(e+f)
    fn mul(self, rhs: DihedralElement, m: usize) -> DihedralElement {
        let rotation = if self.reflected {
            (self.rotation + m - rhs.rotation % m) % m
        } else {
            (self.rotation + rhs.rotation) % m
        };
        DihedralElement {
            rotation,
            reflected: self.reflected ^ rhs.reflected,
        }
    }

    fn key(self) -> Key {
        let mut key = [0u16; KEY_SLOTS];
        key[0] = (self.rotation >> 16) as u16;
        key[1] = (self.rotation & 0xffff) as u16;
        key[2] = self.reflected as u16;
        key
    }

    fn order(self, m: usize) -> u32 {
        if self.reflected {
            2
        } else if self.rotation == 0 {
            1
        } else {
            (m / m.gcd(&self.rotation)) as u32
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumerationError {
    #[error("group order {expected} exceeds the enumeration cap {cap}")]
    CapExceeded { expected: BigUint, cap: u64 },
    #[error("rank {rank} exceeds the element-encoding limit ({KEY_SLOTS})")]
    RankTooLarge { rank: usize },
}

#[derive(Debug)]
enum Backend {
    /// Permutation action on the root system; elements keyed by the images
    /// of the simple roots, recoverable as words via parent links.
    Points {
        gen_perms: Vec<Vec<u16>>,
        basis: Vec<u16>,
        parent_gen: Vec<(ElementId, u8)>,
    },
    Dihedral {
        m: usize,
    },
}

/// Census of maximal prime-power element orders, per prime dividing |W|.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct CensusEntry {
    max_l_part: u64,
    witness: ElementId,
}

/// Complete enumeration of one irreducible group.
#[derive(Debug)]
pub struct GroupTable {
    ty: IrreducibleType,
    keys: Vec<Key>,
    index: HashMap<Key, ElementId>,
    lengths: Vec<u32>,
    orders: Vec<u32>,
    order: u64,
    backend: Backend,
    census: BTreeMap<u64, CensusEntry>,
}

/// Sylow-cyclicity verdict for one prime, derived from element orders: the
/// Sylow l-subgroups are cyclic iff some element order realizes the full
/// l-part of |W| (such an element generates a whole Sylow subgroup, and
/// conversely a cyclic Sylow subgroup contains one).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct SylowReport {
    pub prime: u64,
    /// Exact l-part of |W|.
    pub group_l_part: u64,
    /// Largest l-power order of any element.
    pub max_element_l_part: u64,
    pub cyclic: bool,
    /// Element whose order has the maximal l-part.
    #[serde(skip)]
    pub witness: ElementId,
}

/// Enumerates the whole group by BFS from the identity; the BFS layer of an
/// element is its Coxeter length.
pub fn generate_group(
    realization: &ReflectionRealization,
    element_cap: u64,
) -> Result<GroupTable, EnumerationError> {
    if *realization.expected_order() > BigUint::from(element_cap) {
        return Err(EnumerationError::CapExceeded {
            expected: realization.expected_order().clone(),
            cap: element_cap,
        });
    }
    match &realization.kind {
        RealizationKind::Matrix { generators } => {
            if realization.rank() > KEY_SLOTS {
                return Err(EnumerationError::RankTooLarge {
                    rank: realization.rank(),
                });
            }
            enumerate_points(realization.ty, generators, element_cap)
        }
        RealizationKind::Dihedral { m } => enumerate_dihedral(realization.ty, *m, element_cap),
    }
}

/// Closes the simple roots under the generator action and returns the roots
/// together with each generator as a permutation of root indices.
fn root_closure(generators: &[Matrix]) -> (Vec<Vec<i64>>, Vec<Vec<u16>>) {
    let rank = generators.len();
    let mut roots: Vec<Vec<i64>> = Vec::new();
    let mut lookup: HashMap<Vec<i64>, u16> = HashMap::new();
    for i in 0..rank {
        let mut v = vec![0i64; rank];
        v[i] = 1;
        lookup.insert(v.clone(), roots.len() as u16);
        roots.push(v);
    }
    let mut cursor = 0;
    while cursor < roots.len() {
        let v = roots[cursor].clone();
        for g in generators {
            let image = g.apply(&v);
            if !lookup.contains_key(&image) {
                assert!(roots.len() < u16::MAX as usize, "root closure diverged");
                lookup.insert(image.clone(), roots.len() as u16);
                roots.push(image);
            }
        }
        cursor += 1;
    }
    let perms = generators
        .iter()
        .map(|g| roots.iter().map(|r| lookup[&g.apply(r)]).collect())
        .collect();
    (roots, perms)
}

fn permutation_order(perm: &[u16], seen: &mut [bool]) -> u32 {
    seen.fill(false);
    let mut order: u64 = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len: u64 = 0;
        let mut p = start;
        while !seen[p] {
            seen[p] = true;
            p = perm[p] as usize;
            len += 1;
        }
        order = order.lcm(&len);
    }
    u32::try_from(order).expect("element order fits u32")
}

fn enumerate_points(
    ty: IrreducibleType,
    generators: &[Matrix],
    element_cap: u64,
) -> Result<GroupTable, EnumerationError> {
    let rank = generators.len();
    let (roots, gen_perms) = root_closure(generators);
    let points = roots.len();
    let basis: Vec<u16> = (0..rank as u16).collect();

    let identity_perm: Vec<u16> = (0..points as u16).collect();
    let identity_key = extract_key(&identity_perm, &basis);

    let mut keys = vec![identity_key];
    let mut index = HashMap::from([(identity_key, 0u32)]);
    let mut lengths = vec![0u32];
    let mut orders = vec![1u32];
    let mut parent_gen = vec![(0u32, NO_PARENT)];
    let mut census = BTreeMap::new();

    let mut seen_scratch = vec![false; points];
    let mut frontier: Vec<(ElementId, Vec<u16>)> = vec![(0, identity_perm)];
    let mut depth = 0u32;
    while !frontier.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for (id, perm) in &frontier {
            for (g, gen_perm) in gen_perms.iter().enumerate() {
                // child = w * s_g acts by x -> w(s_g(x))
                let key = {
                    let mut key = [0u16; KEY_SLOTS];
                    for (slot, &b) in basis.iter().enumerate() {
                        key[slot] = perm[gen_perm[b as usize] as usize];
                    }
                    key
                };
                if index.contains_key(&key) {
                    continue;
                }
                if keys.len() as u64 >= element_cap {
                    return Err(EnumerationError::CapExceeded {
                        expected: BigUint::from(keys.len() as u64 + 1),
                        cap: element_cap,
                    });
                }
                let child: Vec<u16> = gen_perm.iter().map(|&x| perm[x as usize]).collect();
                let new_id = keys.len() as ElementId;
                let order = permutation_order(&child, &mut seen_scratch);
                record_census(&mut census, order, new_id);
                keys.push(key);
                index.insert(key, new_id);
                lengths.push(depth);
                orders.push(order);
                parent_gen.push((*id, g as u8));
                next.push((new_id, child));
            }
        }
        frontier = next;
    }

    let order = keys.len() as u64;
    Ok(GroupTable {
        ty,
        keys,
        index,
        lengths,
        orders,
        order,
        backend: Backend::Points {
            gen_perms,
            basis,
            parent_gen,
        },
        census,
    })
}

fn enumerate_dihedral(
    ty: IrreducibleType,
    m: usize,
    element_cap: u64,
) -> Result<GroupTable, EnumerationError> {
    let gens = [
        DihedralElement {
            rotation: 0,
            reflected: true,
        },
        DihedralElement {
            rotation: 1,
            reflected: true,
        },
    ];
    let identity = DihedralElement::identity();

    let mut keys = vec![identity.key()];
    let mut index = HashMap::from([(identity.key(), 0u32)]);
    let mut lengths = vec![0u32];
    let mut orders = vec![1u32];
    let mut census = BTreeMap::new();

    let mut frontier = vec![identity];
    let mut depth = 0u32;
    while !frontier.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for w in &frontier {
            for g in gens {
                let child = w.mul(g, m);
                if index.contains_key(&child.key()) {
                    continue;
                }
                if keys.len() as u64 >= element_cap {
                    return Err(EnumerationError::CapExceeded {
                        expected: BigUint::from(keys.len() as u64 + 1),
                        cap: element_cap,
                    });
                }
                let new_id = keys.len() as ElementId;
                let order = child.order(m);
                record_census(&mut census, order, new_id);
                keys.push(child.key());
                index.insert(child.key(), new_id);
                lengths.push(depth);
                orders.push(order);
                next.push(child);
            }
        }
        frontier = next;
    }

    let order = keys.len() as u64;
    Ok(GroupTable {
        ty,
        keys,
        index,
        lengths,
        orders,
        order,
        backend: Backend::Dihedral { m },
        census,
    })
}

fn extract_key(perm: &[u16], basis: &[u16]) -> Key {
    let mut key = [0u16; KEY_SLOTS];
    for (slot, &b) in basis.iter().enumerate() {
        key[slot] = perm[b as usize];
    }
    key
}

fn record_census(census: &mut BTreeMap<u64, CensusEntry>, order: u32, id: ElementId) {
    let mut n = order as u64;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut l_part = 1;
            while n.is_multiple_of(p) {
                n /= p;
                l_part *= p;
            }
            bump_census(census, p, l_part, id);
        }
        p += 1;
    }
    if n > 1 {
        bump_census(census, n, n, id);
    }
}

fn bump_census(census: &mut BTreeMap<u64, CensusEntry>, prime: u64, l_part: u64, id: ElementId) {
    let entry = census.entry(prime).or_insert(CensusEntry {
        max_l_part: 1,
        witness: 0,
    });
    if l_part > entry.max_l_part {
        *entry = CensusEntry {
            max_l_part: l_part,
            witness: id,
        };
    }
}

impl GroupTable {
    pub fn irreducible_type(&self) -> IrreducibleType {
        self.ty
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn identity(&self) -> ElementId {
        0
    }

    pub fn num_generators(&self) -> usize {
        match &self.backend {
            Backend::Points { gen_perms, .. } => gen_perms.len(),
            Backend::Dihedral { .. } => 2,
        }
    }

    /// BFS discovers the generators first, in order, as ids 1..=rank.
    pub fn generator(&self, i: usize) -> ElementId {
        assert!(i < self.num_generators());
        (i + 1) as ElementId
    }

    pub fn length(&self, w: ElementId) -> u32 {
        self.lengths[w as usize]
    }

    pub fn max_length(&self) -> u32 {
        self.lengths.iter().copied().max().unwrap_or(0)
    }

    /// Least `k >= 1` with `w^k = 1`.
    pub fn element_order(&self, w: ElementId) -> u32 {
        self.orders[w as usize]
    }

    /// Number of elements of each Coxeter length.
    pub fn length_histogram(&self) -> Vec<u64> {
        let mut hist = vec![0u64; self.max_length() as usize + 1];
        for &l in &self.lengths {
            hist[l as usize] += 1;
        }
        hist
    }

    /// Group product `a * b`.
    pub fn compose(&self, a: ElementId, b: ElementId) -> ElementId {
        match &self.backend {
            Backend::Points { basis, .. } => {
                let key_b = self.keys[b as usize];
                let mut key = [0u16; KEY_SLOTS];
                for slot in 0..basis.len() {
                    key[slot] = self.apply_to_point(a, key_b[slot]);
                }
                *self.index.get(&key).expect("product stays in the group")
            }
            Backend::Dihedral { m } => {
                let product = self.decode_dihedral(a).mul(self.decode_dihedral(b), *m);
                self.index[&product.key()]
            }
        }
    }

    // w = parent * s_g acts by x -> parent(s_g(x)); walk the BFS tree.
    fn apply_to_point(&self, w: ElementId, point: u16) -> u16 {
        let Backend::Points {
            gen_perms,
            parent_gen,
            ..
        } = &self.backend
        else {
            unreachable!()
        };
        let mut x = point;
        let mut id = w;
        while id != 0 {
            let (parent, g) = parent_gen[id as usize];
            x = gen_perms[g as usize][x as usize];
            id = parent;
        }
        x
    }

    fn decode_dihedral(&self, w: ElementId) -> DihedralElement {
        let key = self.keys[w as usize];
        DihedralElement {
            rotation: ((key[0] as usize) << 16) | key[1] as usize,
            reflected: key[2] == 1,
        }
    }

    /// Primes dividing |W|, ascending.
    pub fn sylow_primes(&self) -> Vec<u64> {
        let mut primes: Vec<u64> = Vec::new();
        let mut n = self.order;
        let mut p = 2u64;
        while p * p <= n {
            if n.is_multiple_of(p) {
                primes.push(p);
                while n.is_multiple_of(p) {
                    n /= p;
                }
            }
            p += 1;
        }
        if n > 1 {
            primes.push(n);
        }
        primes
    }

    /// Sylow cyclicity by element orders. `l` must be prime.
    pub fn sylow_is_cyclic(&self, l: u64) -> SylowReport {
        assert!(is_prime(l), "sylow_is_cyclic needs a prime, got {l}");
        let mut group_l_part = 1u64;
        let mut n = self.order;
        while n.is_multiple_of(l) {
            n /= l;
            group_l_part *= l;
        }
        let entry = self.census.get(&l).copied().unwrap_or(CensusEntry {
            max_l_part: 1,
            witness: 0,
        });
        SylowReport {
            prime: l,
            group_l_part,
            max_element_l_part: entry.max_l_part,
            cyclic: entry.max_l_part == group_l_part,
            witness: entry.witness,
        }
    }
}

/// `sum_w x^{l(w)}` straight from the BFS layers.
pub fn poincare_bruteforce(table: &GroupTable) -> IntPolynomial {
    IntPolynomial::from_coeffs(
        table
            .length_histogram()
            .into_iter()
            .map(num_bigint::BigInt::from),
    )
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}
