use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scinf::geometry::{probe_lemma, FreeAbelian, GroupOracle, LemmaConstants, Raag};
use scinf::hypothesis::{TSpec, all_relators, check_hypothesis, verify_certificate, HypothesisCertificate, HypothesisFailure};
use scinf::mcg_catalog::{classify_mcg, default_triples, gervais_genus3, gervais_t, hand_assignment, GervaisSpec, MCGKind, MCGSignature};
use scinf::presentations::{commutator_word, Presentation};
use scinf::vankampen::{build_diagram, BuildOptions, ConjugateProduct, Factor};
use scinf::words::{Letter, Word};

use crate::oracles;
use crate::Outcome;

pub(crate) fn scinf(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_scinf"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Checks a certificate against commutation read off the relators.
fn independent_check(p: &Presentation, t: &[u32], c: &HypothesisCertificate) -> Result<(), String> {
    let comm = oracles::commuting_pairs(p);
    let commute = |a: u32, b: u32| a == b || comm.contains(&(a.min(b), a.max(b)));
    for (i, r) in p.relators().iter().enumerate() {
        let tr = c.t_assignment.get(&i).ok_or(format!("relator {i} unassigned"))?.0;
        ensure(t.contains(&tr), || format!("relator {i}: t_r outside T"))?;
        for l in r.letters() {
            let s = l.gen.0;
            ensure(commute(tr, s), || format!("relator {i}: t_r does not commute with {}", p.gen_name(l.gen)))?;
            let z = c.z_witnesses.get(&i).and_then(|m| m.get(&l.gen)).ok_or(format!("relator {i}: no z"))?.0;
            ensure(t.contains(&z) && z != tr && commute(z, s), || format!("relator {i}: bad z"))?;
        }
    }
    Ok(())
}

pub fn gervais() -> Outcome {
    let (code, out, err) = scinf(&["check", "--preset", "gervais3", "--t", "c12,c34,c13"]);
    ensure(code == 0 && out.contains("t_assignment"), || format!("check exited {code}: {err}"))?;
    let configs: Vec<Vec<(u8, u8, u8)>> = vec![
        default_triples(),
        vec![],
        vec![(1, 2, 3)],
        vec![(1, 2, 4), (2, 3, 4), (4, 3, 1)],
        vec![(2, 1, 3), (3, 4, 2), (1, 4, 3), (4, 2, 1)],
    ];
    for tr in &configs {
        let p = gervais_genus3(tr.clone()).map_err(|e| e.to_string())?;
        let t = gervais_t(&p).map_err(|e| e.to_string())?;
        let tid: Vec<u32> = t.members.iter().map(|g| g.0).collect();
        let greedy = check_hypothesis(&p, &t, &all_relators(&p)).map_err(|f| f.describe(&p))?;
        let hand = hand_assignment(&p).map_err(|e| e.to_string())?;
        ensure(verify_certificate(&p, &t, &greedy), || "greedy certificate rejected".into())?;
        ensure(verify_certificate(&p, &t, &hand), || "hand assignment rejected".into())?;
        independent_check(&p, &tid, &greedy)?;
        independent_check(&p, &tid, &hand)?;
        let g = |n: &str| p.gen(n).unwrap();
        let b1b2 = commutator_word(Letter::pos(g("b1")), Letter::pos(g("b2")));
        for (i, r) in p.relators().iter().enumerate() {
            let want = if p.star_tags().contains(&i) {
                g("c12")
            } else if r.is_cyclic_conjugate_up_to_inverse(&b1b2) {
                g("c13")
            } else if r.contains_gen(g("b1")) {
                g("c34")
            } else {
                g("c12")
            };
            ensure(hand.t_assignment[&i] == want, || format!("relator {i} assigned unexpectedly"))?;
        }
    }
    Ok(format!("cli exit 0; greedy and hand certificates verified for {} triple configurations", configs.len()))
}

pub fn counterexample() -> Outcome {
    let p = GervaisSpec::new(default_triples())
        .with_extra_pair("c34", "c12")
        .build()
        .map_err(|e| e.to_string())?;
    let t = gervais_t(&p).map_err(|e| e.to_string())?;
    let f = match check_hypothesis(&p, &t, &all_relators(&p)) {
        Ok(_) => return Err("mutated data still passes".into()),
        Err(f) => f,
    };
    let (c12, c34) = (p.gen("c12").unwrap(), p.gen("c34").unwrap());
    let HypothesisFailure::TNotCommuting { a, b, witness: Some(r) } = f else {
        return Err(format!("unexpected failure: {}", f.describe(&p)));
    };
    ensure([a, b] == [c12, c34] || [a, b] == [c34, c12], || "wrong pair reported".into())?;
    let w = &p.relators()[r];
    ensure(w.contains_gen(c12) && w.contains_gen(c34), || format!("relator {r} lacks the pair"))?;
    let comm = oracles::commuting_pairs(&p);
    ensure(!comm.contains(&(c12.0.min(c34.0), c12.0.max(c34.0))), || "pair still commutes".into())?;
    Ok(f.describe(&p))
}

/// The published case list, restated.
fn reference_kind(g: u32, r: u32, s: u32) -> (MCGKind, Option<i64>) {
    if g == 0 && ((r == 0 && s <= 3) || (r == 1 && s == 0)) {
        return (MCGKind::Finite, None);
    }
    let vf = [(0, 0, 4), (0, 1, 1), (0, 1, 2), (0, 2, 0), (1, 0, 0), (1, 0, 1)];
    if vf.contains(&(g, r, s)) {
        return (MCGKind::VirtuallyFreeInfinite, None);
    }
    let ff = [(0, 0, 5), (0, 1, 3), (0, 2, 1), (1, 1, 0), (1, 0, 2)];
    if ff.contains(&(g, r, s)) {
        return (MCGKind::FreeByFreeVirtual, None);
    }
    let (g, r, s) = (i64::from(g), i64::from(r), i64::from(s));
    let d = match (g, r + s) {
        (0, _) => 2 * r + s - 3,
        (_, 0) => 4 * g - 5,
        _ => 4 * g + 2 * r + s - 4,
    };
    (MCGKind::ConnectedAtInfinity, Some(d - 2))
}

pub fn mcg_table() -> Outcome {
    let mut n = 0;
    for g in 0..=5 {
        for r in 0..=3 {
            for s in 0..=5 {
                let c = classify_mcg(MCGSignature { g, r, s });
                let (k, d) = reference_kind(g, r, s);
                ensure(c.kind == k && c.connectivity_degree == d, || format!("({g},{r},{s}) gives {c:?}"))?;
                n += 1;
            }
        }
    }
    for g in [3, 4] {
        let d = classify_mcg(MCGSignature { g, r: 0, s: 0 }).connectivity_degree;
        ensure(d == Some(4 * i64::from(g) - 7), || format!("genus {g} closed: {d:?}"))?;
    }
    Ok(format!("{n} signatures match; closed genus 3 and 4 give 5 and 9"))
}

fn z3_t(o: &dyn GroupOracle) -> TSpec {
    TSpec::from_names(o.presentation(), &["x", "y", "z"]).unwrap()
}

fn max_relator_len(o: &dyn GroupOracle) -> usize {
    o.presentation().relators().iter().map(|r| r.len()).max().unwrap_or(0)
}

pub fn constants() -> Outcome {
    let o = FreeAbelian::standard(3);
    let w = max_relator_len(&o);
    let c = LemmaConstants::new(&o, &z3_t(&o).members, w);
    let row = c.row(1);
    let got = (row.l1, row.m1, row.l2, row.m2, row.threshold);
    ensure(got == (3, 6, 3, 10, 35), || format!("table gives {got:?}"))?;
    for m in 1..=10 {
        let r = c.row(m);
        let want = oracles::z3_constants(m, w);
        ensure((r.l1, r.m1, r.l2, r.m2) == want, || format!("m = {m}: {r:?} vs {want:?}"))?;
    }
    let th = oracles::z3_threshold(1, w);
    ensure(th == row.threshold, || format!("brute-force threshold {th}"))?;
    Ok(format!("L1=3 M1=6 L2=3 M2=10 threshold=35; rows m=1..10 match brute force (W={w})"))
}

pub fn probes() -> Outcome {
    let groups: Vec<(&str, Box<dyn GroupOracle>)> =
        vec![("z3", Box::new(FreeAbelian::standard(3))), ("f2xz3", Box::new(Raag::f2_z3()))];
    let mut met = 0;
    let mut runs = 0;
    for (name, o) in &groups {
        let c = LemmaConstants::new(o.as_ref(), &z3_t(o.as_ref()).members, max_relator_len(o.as_ref()));
        for lemma in 1..=4 {
            for m in [1, 2] {
                let r = probe_lemma(&c, lemma, 500, m, 7).map_err(|e| e.to_string())?;
                ensure(r.violations == 0, || format!("{name} lemma {lemma} m={m}: {:?}", r.violation_samples))?;
                ensure(r.hypothesis_met > 0, || format!("{name} lemma {lemma} m={m}: no trial met the hypothesis"))?;
                met += r.hypothesis_met;
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} runs of 500 trials, {met} met the hypotheses, 0 violations"))
}

pub fn van_kampen() -> Outcome {
    let o = FreeAbelian::standard(3);
    let p = o.presentation();
    let letters = p.letters();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for trial in 0..200 {
        let factors = (0..rng.gen_range(1..=6))
            .map(|_| Factor {
                conj: Word::raw((0..rng.gen_range(0..=5)).map(|_| letters[rng.gen_range(0..letters.len())]).collect()),
                relator: rng.gen_range(0..p.relators().len()),
                exponent: if rng.gen_bool(0.5) { 1 } else { -1 },
            })
            .collect();
        let prod = ConjugateProduct::new(factors);
        let d = build_diagram(p, &prod, BuildOptions { audit: true }).map_err(|e| format!("trial {trial}: {e}"))?;
        let want = oracles::naive_reduce(prod.word(p).letters().to_vec());
        ensure(d.boundary_word().letters() == want.as_slice(), || format!("trial {trial}: boundary differs"))?;
        ensure(d.euler_characteristic() == 2, || format!("trial {trial}: euler characteristic"))?;
    }
    Ok("200/200 boundaries equal the free reduction; audited folds kept euler characteristic 2".into())
}
