mod common;

use std::ops::ControlFlow;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lqmatch::classic::{stable_agent_optimal, stable_resource_optimal};
use lqmatch::fpt::{alg_efm, alg_rsm, FptError, SolveOptions};
use lqmatch::gen::{gen_fig1, gen_indset_reduction, Fig1Variant, SimpleGraph};
use lqmatch::kernel::{
    efm_edge_bound, efm_kernelize, efm_lift, efm_project, rsm_kernelize, KernelResult,
};
use lqmatch::optimality::{is_envy_free, is_feasible, is_relaxed_stable, is_stable};
use lqmatch::oracle::{
    find_efm_of_size, for_each_matching, max_efm_bruteforce, max_independent_set_bruteforce,
    max_rsm_bruteforce, DEFAULT_CAP,
};
use lqmatch::{clone_to_one_one, compute_params, Instance, Matching};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{all_graphs, assignment_bound, many_one_family, random_graph, small_family};

const FAMILY_SIZE: usize = 600;
const FAMILY_SEED: u64 = 20_240_601;
const REDUCTION_CAP: usize = 64;

const SEQ: SolveOptions = SolveOptions { threads: 1, budget: None };

/// Collects failed checks; keeps the first few messages.
#[derive(Default)]
struct Tally {
    checks: usize,
    failures: usize,
    messages: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.messages.len() < 5 {
                self.messages.push(msg());
            }
        }
    }

    fn finish(self, summary: String) -> Result<String, String> {
        if self.failures == 0 {
            Ok(format!("{summary}, {} checks", self.checks))
        } else {
            Err(format!(
                "{summary}, {} of {} checks failed: {}",
                self.failures,
                self.checks,
                self.messages.join("; ")
            ))
        }
    }
}

fn size(m: &Option<Matching>) -> Option<usize> {
    m.as_ref().map(Matching::len)
}

fn pairs(inst: &Instance, m: &[(&str, &str)]) -> Matching {
    Matching::from_id_pairs(inst, m.iter().copied()).unwrap()
}

fn fig1_reproduction() -> Result<String, String> {
    let mut t = Tally::default();

    let base = gen_fig1(Fig1Variant::Base);
    let stable = stable_agent_optimal(&base);
    t.check(stable == pairs(&base, &[("a1", "b1")]), || "base stable matching".into());
    t.check(!is_feasible(&base, &stable), || "base stable matching should be infeasible".into());
    let efm = alg_efm(&base, &SEQ).unwrap().best;
    t.check(efm == Some(pairs(&base, &[("a1", "b2")])), || format!("base alg_efm gave {efm:?}"));

    let both = gen_fig1(Fig1Variant::BothLq);
    let efm = alg_efm(&both, &SEQ).unwrap().best;
    t.check(efm.is_none(), || format!("bothlq alg_efm gave {efm:?}"));
    let rsm = alg_rsm(&both, &SEQ).unwrap().best;
    t.check(
        rsm == Some(pairs(&both, &[("a1", "b2"), ("a2", "b1")])),
        || format!("bothlq alg_rsm gave {rsm:?}"),
    );

    let b1 = gen_fig1(Fig1Variant::B1Lq);
    let stable = stable_agent_optimal(&b1);
    t.check(is_feasible(&b1, &stable), || "b1lq stable matching should be feasible".into());
    let efm = alg_efm(&b1, &SEQ).unwrap().best;
    t.check(efm.as_ref() == Some(&stable), || format!("b1lq alg_efm gave {efm:?}"));
    let oracle = max_efm_bruteforce(&b1, DEFAULT_CAP).unwrap();
    t.check(size(&oracle) == Some(stable.len()), || "b1lq oracle optimum differs".into());

    t.finish("3 variants".into())
}

fn efm_oracle_equivalence() -> Result<String, String> {
    let family = small_family(FAMILY_SIZE, FAMILY_SEED);
    let mut t = Tally::default();
    let mut none = 0;
    for (i, inst) in family.iter().enumerate() {
        let ours = alg_efm(inst, &SEQ).unwrap().best;
        let oracle = max_efm_bruteforce(inst, DEFAULT_CAP).unwrap();
        none += oracle.is_none() as usize;
        t.check(size(&ours) == size(&oracle), || {
            format!("instance {i}: alg_efm {:?} vs oracle {:?}", size(&ours), size(&oracle))
        });
        if let Some(m) = &ours {
            t.check(is_feasible(inst, m) && is_envy_free(inst, m), || {
                format!("instance {i}: alg_efm output not feasible envy-free")
            });
        }
    }
    t.finish(format!("{} instances, {none} without a feasible envy-free matching", family.len()))
}

fn rsm_oracle_equivalence() -> Result<String, String> {
    let family = small_family(FAMILY_SIZE, FAMILY_SEED);
    let mut t = Tally::default();
    let mut above_stable = 0;
    for (i, inst) in family.iter().enumerate() {
        let ours = alg_rsm(inst, &SEQ).unwrap().best;
        let oracle = max_rsm_bruteforce(inst, DEFAULT_CAP).unwrap();
        t.check(size(&ours) == size(&oracle), || {
            format!("instance {i}: alg_rsm {:?} vs oracle {:?}", size(&ours), size(&oracle))
        });
        let stable = stable_agent_optimal(inst);
        let s = stable.len();
        let Some(m) = ours else {
            t.check(false, || format!("instance {i}: alg_rsm found nothing on a feasible instance"));
            continue;
        };
        t.check(is_feasible(inst, &m) && is_relaxed_stable(inst, &m), || {
            format!("instance {i}: alg_rsm output not feasible relaxed-stable")
        });
        t.check(m.len() <= 2 * s, || format!("instance {i}: size {} above 2s = {}", m.len(), 2 * s));
        if is_feasible(inst, &stable) {
            t.check(m.len() >= s, || format!("instance {i}: size {} below s = {s}", m.len()));
            above_stable += (m.len() > s) as usize;
        }
    }
    t.finish(format!(
        "{} instances, {above_stable} with a relaxed-stable matching larger than the feasible stable one",
        family.len()
    ))
}

fn efm_kernel_soundness() -> Result<String, String> {
    let family = small_family(FAMILY_SIZE, FAMILY_SEED);
    let mut t = Tally::default();
    let (mut kernels, mut yes, mut no) = (0, 0, 0);
    for (i, inst) in family.iter().enumerate() {
        let oracle = max_efm_bruteforce(inst, DEFAULT_CAP).unwrap();
        let k = match efm_kernelize(inst, None).unwrap() {
            KernelResult::TrivialYes(w) => {
                yes += 1;
                t.check(
                    is_feasible(inst, &w) && is_envy_free(inst, &w) && size(&oracle) == Some(w.len()),
                    || format!("instance {i}: trivial yes witness is not optimal"),
                );
                continue;
            }
            KernelResult::TrivialNo(_) => {
                no += 1;
                t.check(oracle.is_none(), || format!("instance {i}: trivial no but oracle found one"));
                continue;
            }
            KernelResult::Kernel(k) => k,
        };
        kernels += 1;
        let p = compute_params(inst);
        let reduced = k.instance();

        t.check(k.num_edges() <= efm_edge_bound(k.s(), p.t), || {
            format!("instance {i}: {} kernel edges above bound {}", k.num_edges(), efm_edge_bound(k.s(), p.t))
        });
        for &a in &k.cover_agents {
            for &b in inst.agent_prefs(a) {
                if inst.is_lq(b) {
                    t.check(k.mark(a, b).is_some(), || format!("instance {i}: cover-agent LQ edge unmarked"));
                }
            }
            if let Some(b) = k.step4_resource(a) {
                let cover_neighbours = inst
                    .resource_prefs(b)
                    .iter()
                    .filter(|x| k.cover_agents.contains(x))
                    .count();
                t.check(!inst.is_lq(b) && cover_neighbours == 1, || {
                    format!("instance {i}: step-4 edge to a shared or LQ resource")
                });
            }
        }

        let in_kernel = max_efm_bruteforce(reduced, DEFAULT_CAP).unwrap();
        t.check(size(&in_kernel) == size(&oracle), || {
            format!("instance {i}: kernel optimum {:?} vs original {:?}", size(&in_kernel), size(&oracle))
        });
        if let Some(m) = &oracle {
            match efm_project(inst, &k, m) {
                Ok(p) => {
                    t.check(
                        p.len() == m.len() && is_feasible(reduced, &p) && is_envy_free(reduced, &p),
                        || format!("instance {i}: projection broke size or envy-freeness"),
                    );
                    match efm_lift(inst, &k, &p) {
                        Ok(back) => t.check(
                            back.len() == m.len() && is_feasible(inst, &back) && is_envy_free(inst, &back),
                            || format!("instance {i}: lift of projection broke the matching"),
                        ),
                        Err(e) => t.check(false, || format!("instance {i}: lift failed: {e}")),
                    }
                }
                Err(e) => t.check(false, || format!("instance {i}: projection failed: {e}")),
            }
        }
        if let Some(mk) = &in_kernel {
            match efm_lift(inst, &k, mk) {
                Ok(l) => t.check(
                    l.len() == mk.len() && is_feasible(inst, &l) && is_envy_free(inst, &l),
                    || format!("instance {i}: lift broke size or envy-freeness"),
                ),
                Err(e) => t.check(false, || format!("instance {i}: lift failed: {e}")),
            }
        }
    }
    t.check(kernels > 0, || "no instance produced a kernel".into());
    t.finish(format!("{kernels} kernels, {yes} trivial yes, {no} trivial no"))
}

fn rsm_kernel_soundness() -> Result<String, String> {
    let family = small_family(FAMILY_SIZE, FAMILY_SEED);
    let mut t = Tally::default();
    let (mut kernels, mut matchings) = (0, 0usize);
    for (i, inst) in family.iter().enumerate() {
        let stable = stable_agent_optimal(inst);
        let s = stable.len();
        if !is_feasible(inst, &stable) || s == 0 {
            continue;
        }
        t.check(matches!(rsm_kernelize(inst, s).unwrap(), KernelResult::TrivialYes(_)), || {
            format!("instance {i}: k = s is not a trivial yes")
        });
        t.check(matches!(rsm_kernelize(inst, 2 * s + 1).unwrap(), KernelResult::TrivialNo(_)), || {
            format!("instance {i}: k = 2s+1 is not a trivial no")
        });
        let KernelResult::Kernel(k) = rsm_kernelize(inst, s + 1).unwrap() else {
            t.check(false, || format!("instance {i}: k = s+1 gave no kernel"));
            continue;
        };
        kernels += 1;
        let reduced = k.instance();
        let w = 2 * s + 1;

        for &a in &k.cover_agents {
            let own = k.marks.iter().filter(|&&(x, _, o)| x == a && o.by_agent()).count();
            t.check(own <= w, || format!("instance {i}: cover agent marks {own} edges"));
        }
        for &b in &k.cover_resources {
            let own = k.marks.iter().filter(|&&(_, y, o)| y == b && o.by_resource()).count();
            t.check(own <= w, || format!("instance {i}: cover resource marks {own} edges"));
        }
        for (a, b) in stable.edges() {
            t.check(k.mark(a, b).is_some(), || format!("instance {i}: stable edge unmarked"));
        }
        match k.to_kernel(&stable) {
            Some(ms) => t.check(is_stable(reduced, &ms), || format!("instance {i}: M_s unstable in kernel")),
            None => t.check(false, || format!("instance {i}: M_s not inside kernel")),
        }

        for_each_matching(reduced, DEFAULT_CAP, |mk| {
            matchings += 1;
            let m = k.to_original(inst, mk);
            let in_kernel = is_feasible(reduced, mk) && is_relaxed_stable(reduced, mk);
            let in_original = is_feasible(inst, &m) && is_relaxed_stable(inst, &m);
            t.check(in_kernel == in_original, || {
                format!("instance {i}: kernel {in_kernel} vs original {in_original} on {:?}", m.edge_key())
            });
            ControlFlow::Continue(())
        })
        .unwrap();
        for_each_matching(inst, DEFAULT_CAP, |m| {
            if is_feasible(inst, m) && is_relaxed_stable(inst, m) {
                t.check(k.to_kernel(m).is_some(), || {
                    format!("instance {i}: relaxed-stable matching {:?} leaves the kernel", m.edge_key())
                });
            }
            ControlFlow::Continue(())
        })
        .unwrap();
    }
    t.check(kernels > 0, || "no instance produced a kernel".into());
    t.finish(format!("{kernels} kernels, {matchings} kernel matchings compared"))
}

fn reduction_fidelity() -> Result<String, String> {
    let mut graphs: Vec<SimpleGraph> = (1..=4).flat_map(all_graphs).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    graphs.extend((0..20).map(|_| random_graph(5, &mut rng)));
    let mut t = Tally::default();
    let (mut cases, mut yes) = (0, 0);
    for g in &graphs {
        let (n, m) = (g.num_vertices(), g.num_edges());
        let max_deg = (0..n).map(|v| g.degree(v)).max().unwrap_or(0);
        for k in 1..=n {
            cases += 1;
            let inst = gen_indset_reduction(g, k).unwrap();
            let p = compute_params(&inst);
            t.check(inst.num_agents() == n + m && p.q == k, || format!("{g:?} k={k}: wrong shape"));
            if m > 0 {
                t.check(p.t == max_deg + 1, || format!("{g:?} k={k}: t = {} not {}", p.t, max_deg + 1));
            }
            let is = max_independent_set_bruteforce(g, k).is_some();
            let full = find_efm_of_size(&inst, REDUCTION_CAP, m + n).unwrap();
            yes += is as usize;
            t.check(is == full.is_some(), || {
                format!("{} k={k}: IS {is} but size-(m+n) envy-free matching {}", g.to_text().trim().replace('\n', ","), full.is_some())
            });
            if let Some(w) = &full {
                t.check(is_feasible(&inst, w) && is_envy_free(&inst, w), || "witness fails checks".into());
            }
            if n <= 3 {
                let best = max_efm_bruteforce(&inst, REDUCTION_CAP).unwrap();
                t.check((size(&best) == Some(m + n)) == is, || format!("{g:?} k={k}: full oracle disagrees"));
            }
        }
    }
    t.finish(format!("{} graphs, {cases} (graph, k) cases, {yes} with an independent set", graphs.len()))
}

fn enumeration_budget() -> Result<String, String> {
    let mut instances = small_family(FAMILY_SIZE, FAMILY_SEED);
    instances.extend(
        many_one_family(100, 7)
            .iter()
            .map(|i| clone_to_one_one(i).unwrap().0),
    );
    for g in (1..=4).flat_map(all_graphs) {
        for k in 1..=g.num_vertices() {
            instances.push(gen_indset_reduction(&g, k).unwrap());
        }
    }
    let mut t = Tally::default();
    let mut runs = 0;
    for (i, inst) in instances.iter().enumerate() {
        let bound = assignment_bound(inst);
        let efm = alg_efm(inst, &SEQ).unwrap();
        let mut counts = vec![efm.stats.assignments_enumerated];
        if let Ok(rsm) = alg_rsm(inst, &SEQ) {
            counts.push(rsm.stats.assignments_enumerated);
        }
        for c in counts {
            runs += 1;
            t.check(c as u128 <= bound, || format!("instance {i}: {c} assignments above bound {bound}"));
        }
        let n = efm.stats.assignments_enumerated;
        let exact = SolveOptions { threads: 1, budget: Some(n) };
        t.check(alg_efm(inst, &exact).is_ok(), || format!("instance {i}: budget {n} rejected"));
        if n > 0 {
            let short = SolveOptions { threads: 1, budget: Some(n - 1) };
            t.check(
                alg_efm(inst, &short) == Err(FptError::BudgetExceeded { budget: n - 1 }),
                || format!("instance {i}: budget {} accepted", n - 1),
            );
        }
    }
    t.finish(format!("{} instances, {runs} solver runs", instances.len()))
}

fn structural_invariants() -> Result<String, String> {
    let family = small_family(FAMILY_SIZE, FAMILY_SEED);
    let many = many_one_family(150, 11);
    let mut t = Tally::default();

    for (i, inst) in family.iter().chain(&many).enumerate() {
        let ao = stable_agent_optimal(inst);
        let ro = stable_resource_optimal(inst);
        let agents_match = inst.agents().all(|a| ao.is_agent_matched(a) == ro.is_agent_matched(a));
        let counts_match = inst.resources().all(|b| ao.assignees(b).len() == ro.assignees(b).len());
        t.check(agents_match && counts_match, || format!("instance {i}: matched sets differ across proposal sides"));
    }

    let mut enumerated = 0usize;
    for (i, inst) in family.iter().enumerate() {
        let stable = stable_agent_optimal(inst);
        let unmatched: Vec<_> = inst.agents().filter(|&a| !stable.is_agent_matched(a)).collect();
        if inst.num_agents() <= 5 {
            for_each_matching(inst, DEFAULT_CAP, |m| {
                enumerated += 1;
                let ef = is_envy_free(inst, m);
                if ef {
                    t.check(unmatched.iter().all(|&a| !m.is_agent_matched(a)), || {
                        format!("instance {i}: stable-unmatched agent matched in an envy-free matching")
                    });
                }
                if is_stable(inst, m) {
                    t.check(ef, || format!("instance {i}: stable but not envy-free"));
                    t.check(is_relaxed_stable(inst, m), || format!("instance {i}: stable but not relaxed stable"));
                }
                ControlFlow::Continue(())
            })
            .unwrap();
        } else if let Some(m) = max_efm_bruteforce(inst, DEFAULT_CAP).unwrap() {
            t.check(unmatched.iter().all(|&a| !m.is_agent_matched(a)), || {
                format!("instance {i}: stable-unmatched agent matched in the oracle optimum")
            });
        }
    }

    for (i, inst) in many.iter().enumerate() {
        let (clone, _) = clone_to_one_one(inst).unwrap();
        let (p, c) = (compute_params(inst), compute_params(&clone));
        t.check(clone.is_one_one(), || format!("many-one {i}: clone is not ONE-ONE"));
        t.check(
            (p.s, p.a_bar, p.ell_lq) == (c.s, c.a_bar, c.ell_lq),
            || format!("many-one {i}: (s, a_bar, ell_lq) {:?} became {:?}", (p.s, p.a_bar, p.ell_lq), (c.s, c.a_bar, c.ell_lq)),
        );
    }
    t.finish(format!(
        "{} ONE-ONE and {} MANY-ONE instances, {enumerated} matchings enumerated",
        family.len(),
        many.len()
    ))
}

type Criterion = (&'static str, fn() -> Result<String, String>, Option<Duration>);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("two-agent example reproduction", fig1_reproduction, Some(Duration::from_secs(1))),
        ("envy-free solver matches oracle", efm_oracle_equivalence, Some(Duration::from_secs(60))),
        ("relaxed-stable solver matches oracle", rsm_oracle_equivalence, None),
        ("envy-free kernel soundness", efm_kernel_soundness, None),
        ("relaxed-stable kernel soundness", rsm_kernel_soundness, None),
        ("independent-set reduction fidelity", reduction_fidelity, Some(Duration::from_secs(120))),
        ("assignment enumeration bounds", enumeration_budget, None),
        ("structural invariants", structural_invariants, None),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(detail), Some(limit)) if elapsed > *limit => {
                Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}"))
            }
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail}; {elapsed:.2?})", n + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({detail}; {elapsed:.2?})", n + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
