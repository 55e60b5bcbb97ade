//! Exact canonical forms for small graphs (n <= 64).
//!
//! The certificate is the lexicographically smallest upper-triangle bit
//! string of the adjacency matrix over a pruned set of vertex orderings:
//! iterated colour refinement (degree / neighbour-colour multisets) followed
//! by branching over every vertex of the first non-singleton colour class.
//! Branching over the whole class keeps the result a true canonical form, so
//! certificate equality decides isomorphism exactly, never probabilistically.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use smallvec::SmallVec;

use crate::graph::Graph;

/// Hard bound for canonicalization; above it the refinement workspace would
/// no longer fit the u64 row bitsets.
pub const CANON_MAX_N: usize = 64;

/// Byte sequence identifying an isomorphism class: `[n, packed canonical
/// upper triangle]`. Equal certificates iff isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCertificate(pub Vec<u8>);

impl CanonicalCertificate {
    pub fn to_hex(&self) -> alloc::string::String {
        let mut s = alloc::string::String::with_capacity(self.0.len() * 2);
        for b in &self.0 {
            s.push(char::from_digit((b >> 4) as u32, 16).unwrap());
            s.push(char::from_digit((b & 15) as u32, 16).unwrap());
        }
        s
    }
}

impl fmt::Display for CanonicalCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CanonError {
    TooLarge { n: usize, bound: usize },
}

impl fmt::Display for CanonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonError::TooLarge { n, bound } => {
                write!(f, "canonicalization bound exceeded: n = {} > {}", n, bound)
            }
        }
    }
}

pub fn canonical_certificate(g: &Graph) -> Result<CanonicalCertificate, CanonError> {
    let rows = g
        .bitset_rows()
        .ok_or(CanonError::TooLarge { n: g.n(), bound: CANON_MAX_N })?;
    Ok(certificate_from_rows(g.n(), &rows))
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> Result<bool, CanonError> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonical_certificate(a)? == canonical_certificate(b)?)
}

/// Canonical certificate straight from adjacency bitset rows.
pub fn certificate_from_rows(n: usize, rows: &[u64]) -> CanonicalCertificate {
    debug_assert!(n <= CANON_MAX_N && rows.len() == n);
    if n == 0 {
        return CanonicalCertificate(vec![0]);
    }
    let mut search = Search { n, rows, best: None };
    let mut colors = vec![0u16; n];
    refine(n, rows, &mut colors);
    search.descend(colors);
    let bits = search.best.unwrap();
    let mut bytes = Vec::with_capacity(1 + bits.len());
    debug_assert!(n <= u8::MAX as usize);
    bytes.push(n as u8);
    bytes.extend_from_slice(&bits);
    CanonicalCertificate(bytes)
}

struct Search<'a> {
    n: usize,
    rows: &'a [u64],
    best: Option<Vec<u8>>,
}

impl<'a> Search<'a> {
    fn descend(&mut self, colors: Vec<u16>) {
        match first_non_singleton(self.n, &colors) {
            None => {
                let cert = pack_by_colors(self.n, self.rows, &colors);
                if self.best.as_ref().map_or(true, |b| cert < *b) {
                    self.best = Some(cert);
                }
            }
            Some(cell_color) => {
                for v in 0..self.n {
                    if colors[v] != cell_color {
                        continue;
                    }
                    let mut child = colors.clone();
                    // Individualize v: give it a fresh colour just below its
                    // class, then re-refine.
                    for c in child.iter_mut() {
                        *c = *c * 2 + 1;
                    }
                    child[v] -= 1;
                    refine(self.n, self.rows, &mut child);
                    self.descend(child);
                }
            }
        }
    }
}

/// Smallest colour id that labels more than one vertex.
fn first_non_singleton(n: usize, colors: &[u16]) -> Option<u16> {
    let mut count = [0u8; CANON_MAX_N];
    for &c in colors {
        count[c as usize] = count[c as usize].saturating_add(1);
    }
    (0..n as u16).find(|&c| count[c as usize] > 1)
}

/// Iterated neighbour-colour refinement to a stable colouring. Colour ids
/// are renumbered 0.. by ascending signature, so they depend only on the
/// isomorphism type of the coloured graph.
fn refine(n: usize, rows: &[u64], colors: &mut [u16]) {
    // signature = (own colour, sorted neighbour colours)
    type Sig = SmallVec<[u16; 8]>;
    let mut sigs: Vec<Sig> = vec![SmallVec::new(); n];
    loop {
        for v in 0..n {
            let sig = &mut sigs[v];
            sig.clear();
            sig.push(colors[v]);
            let mut m = rows[v];
            while m != 0 {
                let w = m.trailing_zeros() as usize;
                m &= m - 1;
                sig.push(colors[w]);
            }
            sig[1..].sort_unstable();
        }
        let mut order: Vec<u16> = (0..n as u16).collect();
        order.sort_unstable_by(|&a, &b| sigs[a as usize].cmp(&sigs[b as usize]));
        let mut new_colors = vec![0u16; n];
        let mut next = 0u16;
        for i in 0..n {
            if i > 0 && sigs[order[i] as usize] != sigs[order[i - 1] as usize] {
                next += 1;
            }
            new_colors[order[i] as usize] = next;
        }
        // A stable partition renumbers to itself (the first signature key is
        // the current colour), so reaching a fixed vector is reaching
        // stability.
        let unchanged = new_colors.iter().zip(colors.iter()).all(|(a, b)| a == b);
        colors.copy_from_slice(&new_colors);
        if unchanged {
            break;
        }
    }
}

/// Packs the upper triangle of the adjacency matrix in the vertex order
/// given by ascending colour (discrete colouring assumed).
fn pack_by_colors(n: usize, rows: &[u64], colors: &[u16]) -> Vec<u8> {
    let mut perm = vec![0usize; n];
    for v in 0..n {
        perm[colors[v] as usize] = v;
    }
    let mut bytes = vec![0u8; (n * (n - 1) / 2).div_ceil(8)];
    let mut bit = 0usize;
    for j in 1..n {
        let vj = perm[j];
        for &vi in &perm[..j] {
            if rows[vi] & (1u64 << vj) != 0 {
                bytes[bit / 8] |= 1 << (7 - bit % 8);
            }
            bit += 1;
        }
    }
    bytes
}

/// Backtracking subgraph-isomorphism test: does `host` contain a (not
/// necessarily induced) subgraph isomorphic to `pattern`?
pub fn has_subgraph(host: &Graph, pattern: &Graph) -> bool {
    if pattern.n() > host.n() || pattern.edge_count() > host.edge_count() {
        return false;
    }
    // Map pattern vertices in descending-degree order.
    let mut order: Vec<usize> = (0..pattern.n()).collect();
    order.sort_unstable_by_key(|&v| core::cmp::Reverse(pattern.degree(v)));
    let mut assign = vec![usize::MAX; pattern.n()];
    let mut used = vec![false; host.n()];
    fn place(
        host: &Graph,
        pattern: &Graph,
        order: &[usize],
        pos: usize,
        assign: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let p = order[pos];
        'cand: for h in 0..host.n() {
            if used[h] || host.degree(h) < pattern.degree(p) {
                continue;
            }
            for &q in pattern.neighbors(p) {
                if assign[q] != usize::MAX && !host.has_edge(h, assign[q]) {
                    continue 'cand;
                }
            }
            assign[p] = h;
            used[h] = true;
            if place(host, pattern, order, pos + 1, assign, used) {
                return true;
            }
            assign[p] = usize::MAX;
            used[h] = false;
        }
        false
    }
    place(host, pattern, &order, 0, &mut assign, &mut used)
}
