use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::ball::{ball, DEFAULT_BALL_CAP};
use crate::geometry::constants::{line_hit, ray_hit, t_of, LemmaConstants};
use crate::geometry::oracle::GroupOracle;
use crate::words::{GeneratorId, Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub lemma: u8,
    pub group: String,
    pub m: usize,
    pub trials: usize,
    pub hypothesis_met: usize,
    pub violations: usize,
    /// Up to five offending base points, formatted.
    pub violation_samples: Vec<String>,
}

/// Members of `St^m(*)`, in a fixed order.
pub struct BallMembers {
    pub members: Vec<Word>,
}

impl BallMembers {
    pub fn new(o: &dyn GroupOracle, m: usize) -> Result<Self> {
        let b = ball(o, &Word::empty(), m, DEFAULT_BALL_CAP)?;
        Ok(BallMembers {
            members: b.sorted().into_iter().map(|(w, _)| w.clone()).collect(),
        })
    }

    /// Signed exponents `(e_1, ...)` such that `v * l_1^e_1 * ... = p`, for
    /// each ball member `p` in the coset `v <gens>`.
    fn coset_hits(&self, o: &dyn GroupOracle, v: &Word, letters: &[Letter]) -> Vec<Vec<i64>> {
        let gens: Vec<GeneratorId> = letters.iter().map(|l| l.gen).collect();
        let vinv = v.invert();
        self.members
            .iter()
            .filter_map(|p| {
                o.subgroup_coordinates(&vinv.concat_raw(p), &gens).map(|c| {
                    c.iter()
                        .zip(letters)
                        .map(|(&k, l)| k * l.sign())
                        .collect()
                })
            })
            .collect()
    }

    /// `v · P(x^+, y)` meets the ball.
    pub fn half_plane_meets(&self, o: &dyn GroupOracle, v: &Word, x: Letter, y: Letter) -> bool {
        self.coset_hits(o, v, &[x, y]).iter().any(|c| c[0] >= 0)
    }

    /// `v · R(x^+, y, z)` meets the ball.
    pub fn half_space_meets(&self, o: &dyn GroupOracle, v: &Word, xyz: [Letter; 3]) -> bool {
        self.coset_hits(o, v, &xyz).iter().any(|c| c[0] >= 0)
    }

    /// `T(v, m)` for the pair, by coset membership of ball members.
    pub fn t_of(&self, o: &dyn GroupOracle, v: &Word, x: Letter, y: Letter) -> i64 {
        self.coset_hits(o, v, &[x, y])
            .iter()
            .map(|c| c[0] + 1)
            .max()
            .unwrap_or(1)
            .max(1)
    }
}

fn random_word(rng: &mut ChaCha8Rng, letters: &[Letter], len: usize) -> Word {
    Word::raw((0..len).map(|_| *letters.choose(rng).expect("letters")).collect())
}

fn signed(rng: &mut ChaCha8Rng, g: GeneratorId) -> Letter {
    if rng.gen_bool(0.5) {
        Letter::pos(g)
    } else {
        Letter::neg(g)
    }
}

/// Randomized check of one of the four half-plane/half-space lemmas.
pub fn probe_lemma(
    c: &LemmaConstants<'_>,
    which: u8,
    trials: usize,
    m: usize,
    seed: u64,
) -> Result<ProbeReport> {
    let o = c.oracle();
    let ball_m = BallMembers::new(o, m)?;
    let letters = o.presentation().letters();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((which as u64) << 32) ^ m as u64);
    let (m1, m2) = (c.m1(m), c.m2(m));
    let mut met = 0;
    let mut bad = Vec::new();
    for _ in 0..trials {
        let q = ball_m.members.choose(&mut rng).expect("nonempty ball").clone();
        let noise_len = rng.gen_range(0..=2);
        let noise = random_word(&mut rng, &letters, noise_len);
        let (ok, v) = match which {
            1 => {
                let &(a, b) = c.pairs.choose(&mut rng).expect("pairs");
                let (x, y) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
                let (x, y) = (Letter::pos(x), Letter::pos(y));
                let s = rng.gen_range(-(3 * m1 as i64)..=3 * m1 as i64);
                let v = o.normal_form(&q.concat_raw(&Word::power(x, s)).concat_raw(&noise));
                if line_hit(o, &v, y, m1).is_some() {
                    (None, v)
                } else {
                    let both = ball_m.half_plane_meets(o, &v, x, y)
                        && ball_m.half_plane_meets(o, &v, x.inv(), y);
                    (Some(!both), v)
                }
            }
            2 => {
                let &(a, b) = c.pairs.choose(&mut rng).expect("pairs");
                let (x, y) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
                let (x, y) = (signed(&mut rng, x), signed(&mut rng, y));
                let k = rng.gen_range(1..=3 * m1 as i64);
                let v = o.normal_form(&q.concat_raw(&Word::power(y, -k)).concat_raw(&noise));
                if o.distance(&v) <= m1 || ray_hit(o, &v, y, m).is_none() {
                    (None, v)
                } else {
                    (Some(!ball_m.half_plane_meets(o, &v, y.inv(), x)), v)
                }
            }
            3 => {
                let &(a, b, d) = c.triples.choose(&mut rng).expect("triples");
                let mut t = [a, b, d];
                t.shuffle(&mut rng);
                let xyz = [
                    signed(&mut rng, t[0]),
                    signed(&mut rng, t[1]),
                    signed(&mut rng, t[2]),
                ];
                let k = rng.gen_range(1..=3 * m2 as i64);
                let v = o.normal_form(&q.concat_raw(&Word::power(xyz[0], -k)).concat_raw(&noise));
                if o.distance(&v) <= m2 || ray_hit(o, &v, xyz[0], m).is_none() {
                    (None, v)
                } else {
                    let mut neg = xyz;
                    neg[0] = neg[0].inv();
                    (Some(!ball_m.half_space_meets(o, &v, neg)), v)
                }
            }
            _ => {
                let &(a, b) = c.pairs.choose(&mut rng).expect("pairs");
                let (x, y) = (signed(&mut rng, a), signed(&mut rng, b));
                let len = rng.gen_range(0..=3 * (m + 1));
                let v = o.normal_form(&random_word(&mut rng, &letters, len));
                let t = t_of(o, &v, m, x, y);
                let shifted = o.normal_form(&v.concat_raw(&Word::power(x, t)));
                (Some(!ball_m.half_plane_meets(o, &shifted, x, y)), v)
            }
        };
        match ok {
            None => {}
            Some(true) => met += 1,
            Some(false) => {
                met += 1;
                bad.push(o.presentation().format_word(&v));
            }
        }
    }
    Ok(ProbeReport {
        lemma: which,
        group: o.name().to_string(),
        m,
        trials,
        hypothesis_met: met,
        violations: bad.len(),
        violation_samples: bad.into_iter().take(5).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::constants::{half_plane_hit, half_space_hit};
    use crate::geometry::oracle::{FreeAbelian, Raag};

    #[test]
    fn ball_member_checks_match_truncated_scans() {
        let o = Raag::f2_z3();
        let p = o.presentation();
        let l = |s: &str| {
            let w = p.parse_word(s).unwrap();
            w.letters()[0]
        };
        let bm = BallMembers::new(&o, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let letters = p.letters();
        for _ in 0..60 {
            let len = rng.gen_range(0..6);
            let v = o.normal_form(&random_word(&mut rng, &letters, len));
            for (x, y) in [("x", "y"), ("y^-1", "z"), ("z", "x^-1")] {
                let (x, y) = (l(x), l(y));
                assert_eq!(
                    bm.half_plane_meets(&o, &v, x, y),
                    half_plane_hit(&o, &v, x, y, 2).is_some()
                );
                assert_eq!(bm.t_of(&o, &v, x, y), t_of(&o, &v, 2, x, y));
            }
            let xyz = [l("x^-1"), l("y"), l("z")];
            assert_eq!(
                bm.half_space_meets(&o, &v, xyz),
                half_space_hit(&o, &v, (xyz[0], xyz[1], xyz[2]), 2).is_some()
            );
        }
    }

    #[test]
    fn lemma2_control_reports_unmet_hypothesis() {
        let o = FreeAbelian::standard(3);
        let t: Vec<GeneratorId> = o.presentation().generator_ids().collect();
        let c = LemmaConstants::new(&o, &t, 4);
        // v inside St^{M1(1)}: the hypothesis fails, which is not a violation
        let v = o.element(&[2, 0, 0]);
        assert!(o.distance(&v) <= c.m1(1));
        let r = probe_lemma(&c, 2, 50, 1, 3).unwrap();
        assert_eq!(r.violations, 0);
        assert!(r.hypothesis_met > 0 && r.hypothesis_met <= 50);
    }

    #[test]
    fn probes_small_z3() {
        let o = FreeAbelian::standard(3);
        let t: Vec<GeneratorId> = o.presentation().generator_ids().collect();
        let c = LemmaConstants::new(&o, &t, 4);
        for which in 1..=4 {
            let r = probe_lemma(&c, which, 40, 1, 11).unwrap();
            assert_eq!(r.violations, 0, "{r:?}");
            assert!(r.hypothesis_met > 0, "{r:?}");
        }
    }
}
