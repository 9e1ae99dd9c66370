use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::geometry::oracle::GroupOracle;
use crate::words::Word;

pub const DEFAULT_BALL_CAP: usize = 2_000_000;

/// Closed ball `St^n(center)` with exact distances from the center.
#[derive(Clone, Debug)]
pub struct Ball {
    pub center: Word,
    pub radius: usize,
    pub members: HashMap<Word, usize>,
}

impl Ball {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, g: &Word) -> bool {
        self.members.contains_key(g)
    }

    pub fn distance(&self, g: &Word) -> Option<usize> {
        self.members.get(g).copied()
    }

    /// Members sorted by (distance, word) for stable output.
    pub fn sorted(&self) -> Vec<(&Word, usize)> {
        let mut v: Vec<_> = self.members.iter().map(|(w, &d)| (w, d)).collect();
        v.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(b.0)));
        v
    }
}

/// Breadth-first enumeration in the Cayley graph on the presentation's
/// generators.
pub fn ball(oracle: &dyn GroupOracle, center: &Word, n: usize, cap: usize) -> Result<Ball> {
    let letters = oracle.presentation().letters();
    let center = oracle.normal_form(center);
    let mut members = HashMap::new();
    members.insert(center.clone(), 0usize);
    let mut frontier = vec![center.clone()];
    for r in 1..=n {
        let mut next = Vec::new();
        for g in &frontier {
            for &l in &letters {
                let h = oracle.mul_letter(g, l);
                if !members.contains_key(&h) {
                    members.insert(h.clone(), r);
                    next.push(h);
                }
            }
        }
        if members.len() > cap {
            return Err(Error::BallOverflow {
                cap,
                radius_reached: r,
                frontier: next.len(),
            });
        }
        next.sort();
        frontier = next;
    }
    Ok(Ball {
        center,
        radius: n,
        members,
    })
}
