//! Search for complementary conic pairs that are rich in a sphere set.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;

use crate::field::Scalar;
use crate::linalg::rref;
use crate::sphere::{contact_unchecked, sphere_to_lie};
use crate::structures::{common_contact_conic, ConicSection};

use super::gen::rng;
use super::parallel::fold_rows;
use super::SphereSet;

/// Largest set scanned over all triples; larger sets are sampled.
pub const EXHAUSTIVE_LIMIT: usize = 300;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicPairHit {
    /// The smaller conic of the pair in the canonical order.
    pub first: ConicSection,
    pub second: ConicSection,
    /// Sorted indices into the set.
    pub first_members: Vec<usize>,
    pub second_members: Vec<usize>,
}

impl ConicPairHit {
    fn oriented(a: ConicSection, am: Vec<usize>, b: ConicSection, bm: Vec<usize>) -> Self {
        if a <= b {
            ConicPairHit { first: a, second: b, first_members: am, second_members: bm }
        } else {
            ConicPairHit { first: b, second: a, first_members: bm, second_members: am }
        }
    }

    pub fn first_count(&self) -> usize {
        self.first_members.len()
    }

    pub fn second_count(&self) -> usize {
        self.second_members.len()
    }
}

struct ContactBits {
    words: usize,
    rows: Vec<u64>,
}

impl ContactBits {
    fn new(set: &SphereSet, workers: usize) -> Self {
        let s = set.spheres();
        let n = s.len();
        let words = n.div_ceil(64);
        let partial = fold_rows(
            n,
            workers,
            Vec::new,
            |acc: &mut Vec<(usize, Vec<u64>)>, i| {
                let mut row = vec![0u64; words];
                for (j, t) in s.iter().enumerate() {
                    if j != i && contact_unchecked(&s[i], t) {
                        row[j / 64] |= 1 << (j % 64);
                    }
                }
                acc.push((i, row));
            },
            |mut a, b| {
                a.extend(b);
                a
            },
        );
        let mut rows = vec![0u64; n * words];
        for (i, row) in partial {
            rows[i * words..(i + 1) * words].copy_from_slice(&row);
        }
        ContactBits { words, rows }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.row(i)[j / 64] >> (j % 64) & 1 == 1
    }

    /// Indices in contact with all of `i`, `j`, `k`.
    fn common(&self, i: usize, j: usize, k: usize) -> Vec<usize> {
        let (a, b, c) = (self.row(i), self.row(j), self.row(k));
        let mut out = Vec::new();
        for w in 0..self.words {
            let mut bits = a[w] & b[w] & c[w];
            while bits != 0 {
                out.push(w * 64 + bits.trailing_zeros() as usize);
                bits &= bits - 1;
            }
        }
        out
    }
}

/// `v` modulo the span of two RREF rows, scaled so its first nonzero entry is 1.
fn projected_key(rows: &[[Scalar; 6]; 2], pivots: &[usize], v: &[Scalar; 6]) -> [Scalar; 6] {
    let mut w = *v;
    for (r, &p) in pivots.iter().enumerate() {
        let k = w[p];
        if !k.is_zero() {
            for c in 0..6 {
                w[c] = w[c] - k * rows[r][c];
            }
        }
    }
    let lead = w.iter().find(|c| !c.is_zero()).copied().expect("points off the secant line");
    let inv = lead.inv().expect("nonzero");
    w.map(|c| c * inv)
}

/// Complementary pairs `(𝔠, 𝔠′)` with at least `threshold` members of the set
/// on each side. All triples are scanned when the set has at most
/// [`EXHAUSTIVE_LIMIT`] spheres; otherwise `budget` seeded triples are drawn.
pub fn conic_pair_census(
    set: &SphereSet,
    threshold: usize,
    budget: usize,
    seed: u64,
    workers: usize,
) -> Vec<ConicPairHit> {
    let mut hits = if set.len() <= EXHAUSTIVE_LIMIT {
        exhaustive(set, threshold, workers)
    } else {
        sampled(set, threshold, budget, seed, workers)
    };
    hits.sort_by(|a, b| (&a.first, &a.second).cmp(&(&b.first, &b.second)));
    hits.dedup_by(|a, b| a.first == b.first && a.second == b.second);
    hits
}

/// Every plane spanned by set members is found from each pair of its members;
/// a plane is kept only at the pair of its two smallest indices, and a pair of
/// planes only at the side whose smallest index pair is smaller.
fn exhaustive(set: &SphereSet, threshold: usize, workers: usize) -> Vec<ConicPairHit> {
    let s = set.spheres();
    let n = s.len();
    let q: Vec<[Scalar; 6]> = s.iter().map(|x| sphere_to_lie(x).coords()).collect();
    let bits = ContactBits::new(set, workers);
    fold_rows(
        n,
        workers,
        Vec::new,
        |acc: &mut Vec<ConicPairHit>, i| {
            for j in (i + 1)..n {
                if bits.get(i, j) {
                    continue;
                }
                let mut rows = [q[i], q[j]];
                let pivots = rref(&mut rows);
                let mut groups: HashMap<[Scalar; 6], Vec<usize>> = HashMap::new();
                for k in 0..n {
                    if k == i || k == j || bits.get(i, k) || bits.get(j, k) {
                        continue;
                    }
                    groups.entry(projected_key(&rows, &pivots, &q[k])).or_default().push(k);
                }
                for g in groups.into_values() {
                    if g[0] < j || g.len() + 2 < threshold {
                        continue;
                    }
                    let common = bits.common(i, j, g[0]);
                    if common.len() < threshold {
                        continue;
                    }
                    if common.len() >= 3 && (common[0], common[1]) < (i, j) {
                        continue;
                    }
                    let c = common_contact_conic(&s[i], &s[j], &s[g[0]]).expect("admissible triple");
                    let through: Vec<usize> = [i, j].into_iter().chain(g).collect();
                    acc.push(ConicPairHit::oriented(c.clone(), common, c.dual(), through));
                }
            }
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    )
}

fn sampled(set: &SphereSet, threshold: usize, budget: usize, seed: u64, workers: usize) -> Vec<ConicPairHit> {
    let s = set.spheres();
    let n = s.len();
    let bits = ContactBits::new(set, workers);
    let mut r = rng(seed);
    let mut triples = Vec::new();
    for _ in 0..budget {
        let (i, j, k) = (r.gen_range(0..n), r.gen_range(0..n), r.gen_range(0..n));
        if i == j || i == k || j == k || bits.get(i, j) || bits.get(i, k) || bits.get(j, k) {
            continue;
        }
        let mut t = [i, j, k];
        t.sort_unstable();
        triples.push(t);
    }
    triples.sort_unstable();
    triples.dedup();
    let q: Vec<[Scalar; 6]> = s.iter().map(|x| sphere_to_lie(x).coords()).collect();
    let found = fold_rows(
        triples.len(),
        workers,
        BTreeMap::new,
        |acc: &mut BTreeMap<(ConicSection, ConicSection), ConicPairHit>, t| {
            let [i, j, k] = triples[t];
            let common = bits.common(i, j, k);
            if common.len() < threshold {
                return;
            }
            let c = common_contact_conic(&s[i], &s[j], &s[k]).expect("admissible triple");
            let dual = c.dual();
            let through: Vec<usize> = (0..n).filter(|&m| dual.satisfies_constraints(&q[m])).collect();
            if through.len() < threshold {
                return;
            }
            let hit = ConicPairHit::oriented(c, common, dual, through);
            acc.entry((hit.first.clone(), hit.second.clone())).or_insert(hit);
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    );
    found.into_values().collect()
}
