//! Brute-force reference computations for formal contexts.
//!
//! Everything here reads only `FormalContext::incidence` and works on plain
//! `u64` masks, so it shares no code path with the library's bit sets,
//! derivation operators, or enumeration.

use std::collections::BTreeSet;

use continuum_core::{Dimension, FormalContext};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Mask = u64;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random context with 1..=max_objects objects, 1..=max_attributes attributes
/// and a per-context incidence density.
pub fn random_context<R: Rng>(rng: &mut R, max_objects: usize, max_attributes: usize) -> FormalContext {
    let n = rng.random_range(1..=max_objects);
    let m = rng.random_range(1..=max_attributes);
    let density: f64 = rng.random_range(0.15..0.85);
    let incidence = (0..n)
        .map(|_| (0..m).map(|_| rng.random_bool(density)).collect())
        .collect();
    FormalContext::new(
        Dimension::Combined,
        (0..n).map(|i| format!("g{i}")).collect(),
        (0..m).map(|i| format!("m{i}")).collect(),
        incidence,
    )
    .expect("generated names are unique")
}

pub fn bits(mask: Mask) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

pub fn mask_of<I: IntoIterator<Item = usize>>(indices: I) -> Mask {
    indices.into_iter().fold(0, |acc, i| acc | 1 << i)
}

/// Incidence rows as attribute masks.
pub struct Table {
    pub rows: Vec<Mask>,
    pub attributes: usize,
}

impl Table {
    pub fn of(ctx: &FormalContext) -> Self {
        assert!(ctx.attribute_count() <= 64 && ctx.object_count() <= 64);
        let rows = (0..ctx.object_count())
            .map(|g| mask_of((0..ctx.attribute_count()).filter(|&m| ctx.incidence(g, m))))
            .collect();
        Table {
            rows,
            attributes: ctx.attribute_count(),
        }
    }

    pub fn all_attributes(&self) -> Mask {
        if self.attributes == 64 {
            !0
        } else {
            (1 << self.attributes) - 1
        }
    }

    /// Objects whose rows contain `attrs`.
    pub fn extent(&self, attrs: Mask) -> Mask {
        mask_of(
            self.rows
                .iter()
                .enumerate()
                .filter(|(_, &r)| r & attrs == attrs)
                .map(|(g, _)| g),
        )
    }

    /// Attributes shared by the objects in `objs`.
    pub fn intent(&self, objs: Mask) -> Mask {
        bits(objs)
            .filter(|&g| g < self.rows.len())
            .fold(self.all_attributes(), |acc, g| acc & self.rows[g])
    }

    pub fn close(&self, attrs: Mask) -> Mask {
        self.intent(self.extent(attrs))
    }
}

/// Every concept as an (extent mask, intent mask) pair, found by closing every
/// subset of the attributes.
pub fn brute_concepts(ctx: &FormalContext) -> BTreeSet<(Mask, Mask)> {
    let t = Table::of(ctx);
    assert!(t.attributes <= 20, "brute force is exponential in attributes");
    (0..1u64 << t.attributes)
        .map(|attrs| {
            let extent = t.extent(attrs);
            (extent, t.intent(extent))
        })
        .collect()
}

/// Hasse diagram over concept extents: strict inclusions with every
/// transitively implied pair removed.
pub fn brute_covers(extents: &BTreeSet<Mask>) -> BTreeSet<(Mask, Mask)> {
    let below = |a: Mask, b: Mask| a != b && a & b == a;
    let mut strict: BTreeSet<(Mask, Mask)> = BTreeSet::new();
    for &a in extents {
        for &b in extents {
            if below(a, b) {
                strict.insert((a, b));
            }
        }
    }
    let implied: BTreeSet<(Mask, Mask)> = strict
        .iter()
        .filter(|&&(a, c)| extents.iter().any(|&b| below(a, b) && below(b, c)))
        .copied()
        .collect();
    strict.difference(&implied).copied().collect()
}

/// For every premise with at most `max_premise` attributes, the full set of
/// attributes it implies, read directly off the incidence rows.
pub fn brute_implied(ctx: &FormalContext, max_premise: usize) -> Vec<(Mask, Mask)> {
    let t = Table::of(ctx);
    let mut out = Vec::new();
    let mut premise: Vec<usize> = Vec::new();
    fn walk(
        t: &Table,
        start: usize,
        left: usize,
        premise: &mut Vec<usize>,
        out: &mut Vec<(Mask, Mask)>,
    ) {
        let p = mask_of(premise.iter().copied());
        let holders: Vec<Mask> = t.rows.iter().copied().filter(|&r| r & p == p).collect();
        let implied = holders.iter().fold(t.all_attributes(), |acc, &r| acc & r);
        out.push((p, implied));
        if left == 0 {
            return;
        }
        for m in start..t.attributes {
            premise.push(m);
            walk(t, m + 1, left - 1, premise, out);
            premise.pop();
        }
    }
    walk(&t, 0, max_premise, &mut premise, &mut out);
    out
}

/// Pseudo-intents by definition: `P` is not closed and contains the closure
/// of every pseudo-intent properly inside it.
pub fn brute_pseudo_intents(ctx: &FormalContext) -> Vec<Mask> {
    let t = Table::of(ctx);
    assert!(t.attributes <= 16);
    let mut subsets: Vec<Mask> = (0..1u64 << t.attributes).collect();
    subsets.sort_by_key(|s| s.count_ones());
    let mut pseudo: Vec<Mask> = Vec::new();
    for p in subsets {
        if t.close(p) == p {
            continue;
        }
        let respects = pseudo
            .iter()
            .filter(|&&q| q != p && q & p == q)
            .all(|&q| t.close(q) & p == t.close(q));
        if respects {
            pseudo.push(p);
        }
    }
    pseudo
}
