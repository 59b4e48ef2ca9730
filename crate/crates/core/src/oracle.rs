//! Exhaustive verification over small symmetric groups. Every theorem the
//! library relies on is registered here under a stable id and re-checked by
//! brute force; failures are reported as JSON counterexamples.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bruhat::{self, Interval};
use crate::diagram::{hook_components, regions, Cell};
use crate::error::{Error, Result};
use crate::graph::{DiGraph, Vertex};
use crate::kl;
use crate::matrix_schubert::{self, analyze_sym_low, sym_embedding};
use crate::perm::Perm;
use crate::statmodel::{
    ci_condition, ci_realize_ms, double_square, kl_ci_construct, ms_ci_complexity, qi_from_toric, rational_mle,
    sym_fulton_minors, CIStatement, KLCIParams,
};
use crate::symbolic::DEFAULT_SIZE_LIMIT;

#[derive(Clone, Debug)]
pub struct SweepConfig {
    /// Overrides the theorem's default range.
    pub n_max: Option<usize>,
    /// Worker threads; `None` uses rayon's default.
    pub jobs: Option<usize>,
    /// Where to write the JSON report, if anywhere.
    pub report: Option<PathBuf>,
    /// Counterexamples kept in the report.
    pub samples: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { n_max: None, jobs: None, report: None, samples: 5 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub id: String,
    pub description: String,
    pub n_max: usize,
    pub checked: usize,
    pub failures: usize,
    /// Failure counts per kind of check.
    pub failure_kinds: BTreeMap<String, usize>,
    pub passed: bool,
    pub counterexamples: Vec<Value>,
    pub elapsed_ms: u128,
}

pub struct Theorem {
    pub id: &'static str,
    pub description: &'static str,
    pub default_n: usize,
    run: fn(usize) -> Tally,
}

#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<Value>,
}

impl Tally {
    fn check(&mut self, ok: bool, kind: &str, detail: impl FnOnce() -> Value) {
        self.checked += 1;
        if !ok {
            let mut v = detail();
            v["kind"] = json!(kind);
            self.failures.push(v);
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self
    }
}

fn par_tally<T: Sync>(items: &[T], f: impl Fn(&T, &mut Tally) + Sync) -> Tally {
    items
        .par_iter()
        .fold(Tally::default, |mut t, x| {
            f(x, &mut t);
            t
        })
        .reduce(Tally::default, Tally::merge)
}

fn all_upto(n_max: usize) -> Vec<Perm> {
    (1..=n_max).flat_map(Perm::all).collect()
}

fn pairs_upto(n_max: usize) -> Vec<(Perm, Vec<Perm>)> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        let all = Perm::all(n);
        let ups: Vec<(Perm, Vec<Perm>)> = all
            .par_iter()
            .map(|v| (v.clone(), all.iter().filter(|w| bruhat::leq_unchecked(v, w)).cloned().collect()))
            .collect();
        out.extend(ups);
    }
    out
}

pub fn registry() -> &'static [Theorem] {
    &[
        Theorem {
            id: "toric-equivalence",
            description: "hook decomposition of L' succeeds iff w avoids 4312 and 3412 iff complexity 0",
            default_n: 7,
            run: toric_equivalence,
        },
        Theorem {
            id: "no-complexity-one",
            description: "no matrix Schubert variety Y_w has complexity 1",
            default_n: 7,
            run: no_complexity_one,
        },
        Theorem {
            id: "reflection-theorem",
            description: "case analysis of w*s_M for toric w matches direct recomputation, with weight-cone changes",
            default_n: 7,
            run: reflection_theorem,
        },
        Theorem {
            id: "bruhat-coherence",
            description: "rank-based Bruhat comparison agrees with the subword property",
            default_n: 5,
            run: bruhat_coherence,
        },
        Theorem {
            id: "chain-independence",
            description: "components of G_C are the same for every maximal chain and agree with the atom and KL graphs",
            default_n: 5,
            run: chain_independence,
        },
        Theorem {
            id: "kl-chains",
            description: "KL complexity equals the cyclomatic number of every chain graph; covers change it by 0 or 1",
            default_n: 5,
            run: kl_chains,
        },
        Theorem {
            id: "cyclomatic-pairs",
            description: "without unexpected zeros, nu(G_{v,w}) = |P_v| and components are counted by C_v and A_v",
            default_n: 6,
            run: cyclomatic_pairs,
        },
        Theorem {
            id: "rectangle",
            description: "complexity formula when D(w) is a single rectangle",
            default_n: 6,
            run: rectangle,
        },
        Theorem { id: "w0t", description: "complexity formulas for w = w0*t_{l,k}", default_n: 6, run: w0t },
        Theorem {
            id: "sym-low",
            description: "symmetric and lower-triangular weight cones have the dimension of the full one; embedding keeps complexity",
            default_n: 7,
            run: sym_low,
        },
        Theorem {
            id: "ci-bridge",
            description: "CI statements realized as symmetric matrix Schubert varieties: ideal and complexity",
            default_n: 6,
            run: ci_bridge,
        },
        Theorem {
            id: "kl-ci",
            description: "CI statements realized as KL varieties have complexity m(m-1)/2 - |A||B|",
            default_n: 8,
            run: kl_ci,
        },
        Theorem {
            id: "rational-mle",
            description: "quasi-independence models from toric w have doubly chordal bipartite graphs",
            default_n: 7,
            run: rational_mle_sweep,
        },
        Theorem {
            id: "doubly-chordal",
            description: "pruned doubly-chordal test agrees with plain cycle enumeration on subgraphs of K_{a,b}",
            default_n: 4,
            run: doubly_chordal,
        },
    ]
}

pub fn verify(id: &str, config: &SweepConfig) -> Result<Report> {
    let th = registry().iter().find(|t| t.id == id).ok_or_else(|| Error::UnknownTheorem(id.to_string()))?;
    let n_max = config.n_max.unwrap_or(th.default_n);
    if n_max < 3 {
        return Err(Error::Precondition(format!("n_max must be at least 3, got {n_max}")));
    }
    let start = Instant::now();
    let tally = match config.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Error::Precondition(e.to_string()))?
            .install(|| (th.run)(n_max)),
        None => (th.run)(n_max),
    };
    let mut failures = tally.failures;
    let mut failure_kinds = BTreeMap::new();
    for f in &failures {
        *failure_kinds.entry(f["kind"].as_str().unwrap_or("").to_string()).or_insert(0) += 1;
    }
    failures.sort_by_cached_key(|v| v.to_string());
    let report = Report {
        id: th.id.to_string(),
        description: th.description.to_string(),
        n_max,
        checked: tally.checked,
        failures: failures.len(),
        failure_kinds,
        passed: failures.is_empty(),
        counterexamples: failures.into_iter().take(config.samples).collect(),
        elapsed_ms: start.elapsed().as_millis(),
    };
    if let Some(path) = &config.report {
        let text = serde_json::to_string_pretty(&report).expect("report serializes");
        std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(report)
}

/// Runs every registered theorem at its default range (or `config.n_max`).
pub fn verify_all(config: &SweepConfig) -> Result<Vec<Report>> {
    let single = SweepConfig { report: None, ..config.clone() };
    let reports = registry().iter().map(|t| verify(t.id, &single)).collect::<Result<Vec<_>>>()?;
    if let Some(path) = &config.report {
        let text = serde_json::to_string_pretty(&reports).expect("report serializes");
        std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(reports)
}

/// Bruhat comparison through the subword property: is `v` the product of a
/// reduced subword of one fixed reduced word of `w`?
pub fn bruhat_subword_leq(v: &Perm, w: &Perm) -> bool {
    if v.n() != w.n() {
        return false;
    }
    let n = w.n();
    let mut reach: HashSet<Perm> = HashSet::from([Perm::identity(n)]);
    for s in w.reduced_word() {
        let next: Vec<Perm> = reach
            .iter()
            .map(|u| (u.length(), u.right_mul_t(s, s + 1)))
            .filter(|(l, x)| x.length() == l + 1)
            .map(|(_, x)| x)
            .collect();
        reach.extend(next);
    }
    reach.contains(v)
}

/// Every cycle of length at least 6 has two chords, by plain enumeration of
/// all simple cycles.
pub fn doubly_chordal_brute(g: &DiGraph) -> bool {
    let verts: Vec<Vertex> = g.vertices().iter().copied().collect();
    let n = verts.len();
    let idx = |x: &Vertex| verts.iter().position(|y| y == x).unwrap();
    let mut adj = vec![vec![false; n]; n];
    for (a, b) in g.edges() {
        let (i, j) = (idx(a), idx(b));
        adj[i][j] = true;
        adj[j][i] = true;
    }
    fn walk(start: usize, adj: &[Vec<bool>], path: &mut Vec<usize>) -> bool {
        let u = *path.last().unwrap();
        for x in 0..adj.len() {
            if !adj[u][x] {
                continue;
            }
            if x == start && path.len() >= 6 {
                let k = path.len();
                let mut chords = 0;
                for a in 0..k {
                    for b in a + 2..k {
                        if !(a == 0 && b == k - 1) && adj[path[a]][path[b]] {
                            chords += 1;
                        }
                    }
                }
                if chords < 2 {
                    return false;
                }
            }
            if x > start && !path.contains(&x) {
                path.push(x);
                let ok = walk(start, adj, path);
                path.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }
    (0..n).all(|s| walk(s, &adj, &mut vec![s]))
}

fn toric_equivalence(n_max: usize) -> Tally {
    par_tally(&all_upto(n_max), |w, t| {
        let rep = matrix_schubert::analyze(w);
        t.check(
            rep.toric_by_hooks == rep.toric_by_patterns,
            "hooks-vs-patterns",
            || json!({"w": w, "hooks": rep.toric_by_hooks, "patterns": rep.toric_by_patterns}),
        );
        t.check(
            rep.toric_by_hooks == rep.toric,
            "hooks-vs-complexity",
            || json!({"w": w, "hooks": rep.toric_by_hooks, "complexity": rep.complexity}),
        );
        if let Some(hooks) = hook_components(&rep.regions.lprime) {
            // Everything south-west of a hook lies in dom(w).
            for h in hooks {
                let (ci, cj) = h.corner;
                let n = w.n();
                let outside: Vec<Cell> = (ci + 1..=n)
                    .flat_map(|i| (1..cj).map(move |j| (i, j)))
                    .filter(|c| !rep.regions.dom.contains(*c))
                    .collect();
                t.check(
                    outside.is_empty(),
                    "hook-southwest-in-dom",
                    || json!({"w": w, "corner": h.corner, "cells": outside}),
                );
            }
        }
    })
}

fn no_complexity_one(n_max: usize) -> Tally {
    par_tally(&all_upto(n_max), |w, t| {
        let c = matrix_schubert::analyze(w).complexity;
        t.check(c != 1, "complexity-one", || json!({"w": w}));
    })
}

fn reflection_theorem(n_max: usize) -> Tally {
    let toric: Vec<Perm> =
        all_upto(n_max).into_iter().filter(|w| w.n() >= 2 && matrix_schubert::toric_by_patterns(w)).collect();
    par_tally(&toric, |w, t| {
        let verdicts = matrix_schubert::scan_reflections(w).expect("w is toric");
        for v in verdicts {
            t.check(v.predicted_toric == v.actual_toric, "toricity", || serde_json::to_value(&v).unwrap());
            if let Some(holds) = v.weight_cone_holds {
                t.check(holds, "weight-cone", || serde_json::to_value(&v).unwrap());
            }
        }
    })
}

fn bruhat_coherence(n_max: usize) -> Tally {
    let mut tally = Tally::default();
    for n in 1..=n_max {
        let all = Perm::all(n);
        let t = par_tally(&all, |v, t| {
            for w in &all {
                let rank = bruhat::leq(v, w).unwrap();
                let sub = bruhat_subword_leq(v, w);
                t.check(rank == sub, "leq", || json!({"v": v, "w": w, "rank": rank, "subword": sub}));
            }
        });
        tally = tally.merge(t);
    }
    tally
}

fn chain_independence(n_max: usize) -> Tally {
    par_tally(&pairs_upto(n_max), |(v, ups), t| {
        for w in ups {
            let iv = Interval::new(v.clone(), w.clone()).unwrap();
            let parts = iv.chain_partitions();
            t.check(
                parts.len() == 1,
                "chain-dependent",
                || json!({"v": v, "w": w, "partitions": parts.iter().map(|p| p.blocks()).collect::<Vec<_>>()}),
            );
            let at = bruhat::partition_of(&bruhat::atom_graph(v, w).unwrap(), v.n());
            t.check(parts.contains(&at), "atom-graph", || json!({"v": v, "w": w, "atoms": at.blocks()}));
            let pos = kl::position_partition(v, w).unwrap();
            t.check(
                parts.len() == 1 && parts.contains(&pos),
                "kl-graph",
                || json!({"v": v, "w": w, "kl": pos.blocks()}),
            );
        }
    })
}

fn kl_chains(n_max: usize) -> Tally {
    par_tally(&pairs_upto(n_max), |(v, ups), t| {
        let n = v.n();
        for w in ups {
            let cx = kl::complexity(v, w).unwrap();
            let iv = Interval::new(v.clone(), w.clone()).unwrap();
            let len = iv.length();
            for part in iv.chain_partitions() {
                // ν(G_C) = |E| − |V| + #components, with |E| = ℓ(v,w).
                let nu = len + part.num_blocks() - n;
                t.check(
                    nu == cx,
                    "chain-cyclomatic",
                    || json!({"v": v, "w": w, "complexity": cx, "nu": nu, "components": part.blocks()}),
                );
            }
            for (_, lower) in bruhat::lower_covers(w) {
                if bruhat::leq_unchecked(v, &lower) {
                    let below = kl::complexity(v, &lower).unwrap();
                    t.check(
                        cx == below || cx == below + 1,
                        "cover-step",
                        || json!({"v": v, "w": w, "lower": lower, "complexity": cx, "lower_complexity": below}),
                    );
                }
            }
            if cx == 0 && len >= 2 {
                let elems = iv.elements();
                for x in &elems {
                    for y in &elems {
                        if x != y && bruhat::leq_unchecked(x, y) {
                            let c = kl::complexity(x, y).unwrap();
                            t.check(
                                c == 0,
                                "toric-subinterval",
                                || json!({"v": v, "w": w, "x": x, "y": y, "complexity": c}),
                            );
                        }
                    }
                }
            }
        }
    })
}

fn cyclomatic_pairs(n_max: usize) -> Tally {
    par_tally(&pairs_upto(n_max), |(v, ups), t| {
        let n = v.n();
        for w in ups {
            let Ok(an) = kl::no_unexpected_zero_analytics(v, w) else { continue };
            let g = kl::kl_graph(v, w).unwrap();
            t.check(an.nu == an.p_v.len(), "nu-vs-pairs", || json!({"v": v, "w": w, "nu": an.nu, "p_v": an.p_v.len()}));
            let comps = g.components();
            let big = comps.iter().filter(|c| c.len() > 1).count();
            let isolated = comps.len() - big;
            t.check(
                big == an.c_v.len() && isolated == an.a_v.len(),
                "components",
                || json!({"v": v, "w": w, "big": big, "isolated": isolated, "c_v": an.c_v, "a_v": an.a_v}),
            );
            let direct = kl::complexity(v, w).unwrap();
            let via_corners = (w.length() - v.length() + an.c_v.len() + an.a_v.len()) as i64 - n as i64;
            t.check(
                direct == an.complexity && direct as i64 == via_corners,
                "complexity",
                || json!({"v": v, "w": w, "direct": direct, "pairs": an.complexity, "corners": via_corners}),
            );
        }
    })
}

fn rectangle(n_max: usize) -> Tally {
    par_tally(&pairs_upto(n_max), |(v, ups), t| {
        for w in ups.iter().filter(|w| kl::single_rectangle(w).is_some()) {
            let f = kl::rectangle_complexity(v, w).unwrap();
            t.check(f.holds(), "formula", || json!({"v": v, "w": w, "formula": f}));
        }
    })
}

fn w0t(n_max: usize) -> Tally {
    let mut items = Vec::new();
    for n in 2..=n_max {
        for l in 1..n {
            for k in l + 1..=n {
                items.push((n, l, k));
            }
        }
    }
    par_tally(&items, |&(n, l, k), t| {
        let w = Perm::longest(n).right_mul_t(l, k);
        for v in Perm::all(n).iter().filter(|v| bruhat::leq_unchecked(v, &w)) {
            let f = kl::w0t_complexity(v, l, k).unwrap();
            t.check(f.holds(), "formula", || json!({"v": v, "l": l, "k": k, "formula": f}));
        }
    })
}

fn sym_low(n_max: usize) -> Tally {
    let mut tally = par_tally(&all_upto(n_max), |w, t| {
        let rep = analyze_sym_low(w);
        let s = rep.sym.as_ref().unwrap();
        t.check(
            s.dim_sigma_sym == rep.dim_sigma && s.dim_sigma_low == rep.dim_sigma,
            "cone-dimension",
            || json!({"w": w, "full": rep.dim_sigma, "sym": s.dim_sigma_sym, "low": s.dim_sigma_low}),
        );
        t.check(
            s.complexity == s.complexity_formula,
            "complexity",
            || json!({"w": w, "direct": s.complexity, "formula": s.complexity_formula}),
        );
    });
    let c = analyze_sym_low(&Perm::from_vec_unchecked(vec![3, 4, 1, 2])).sym.unwrap().complexity;
    tally.check(c == 1, "3412", || json!({"complexity": c}));
    let emb = par_tally(&Perm::all(4), |v, t| {
        let want = matrix_schubert::analyze(v).complexity as i64;
        let got = analyze_sym_low(&sym_embedding(v)).sym.unwrap().complexity;
        t.check(want == got, "embedding", || json!({"v": v, "complexity": want, "symmetric": got}));
    });
    let seen: BTreeSet<usize> = Perm::all(4).iter().map(|v| matrix_schubert::analyze(v).complexity).collect();
    tally.check([0, 2, 3].iter().all(|d| seen.contains(d)), "embedding-range", || json!({"seen": seen}));
    tally.merge(emb)
}

fn ci_bridge(n_max: usize) -> Tally {
    let stmts: Vec<CIStatement> =
        (2..=n_max).flat_map(CIStatement::all).filter(|s| ci_realize_ms(s).is_some()).collect();
    par_tally(&stmts, |s, t| {
        let c = ms_ci_complexity(s).unwrap();
        t.check(c.formula as i64 == c.direct, "complexity", || json!({"statement": s, "result": c}));
        if s.c.len() <= 1 {
            t.check(c.direct == 0, "toric", || json!({"statement": s, "result": c}));
        }
        let ci: BTreeSet<_> = ci_condition(s).minors(s.m, DEFAULT_SIZE_LIMIT).unwrap().into_iter().collect();
        let ms = sym_fulton_minors(&c.w, DEFAULT_SIZE_LIMIT).unwrap();
        t.check(ci == ms, "ideal", || {
            let show =
                |x: &BTreeSet<_>| x.iter().map(|p: &crate::symbolic::Polynomial| p.to_string()).collect::<Vec<_>>();
            json!({"statement": s, "w": c.w, "ci": show(&ci), "schubert": show(&ms)})
        });
    })
}

fn kl_ci(n_max: usize) -> Tally {
    let mut items = Vec::new();
    for n in 2..=n_max {
        for m in 1..n {
            for k in 1..m {
                for l in 1..=m - k {
                    items.push((n, m, KLCIParams::ZeroBlock { k, l }));
                }
            }
            for s in 1..m.saturating_sub(1) {
                items.push((n, m, KLCIParams::RankOne { s, t: m - 1 - s }));
            }
        }
    }
    par_tally(&items, |&(n, m, params), t| match kl_ci_construct(n, m, params) {
        Ok(c) => {
            t.check(c.complexity == c.formula, "complexity", || json!({"n": n, "m": m, "construction": c}));
            if matches!(params, KLCIParams::RankOne { .. }) {
                t.check(c.dim_sigma == m, "dim-sigma", || json!({"n": n, "m": m, "construction": c}));
            }
        }
        Err(e) => t.check(false, "construction", || json!({"n": n, "m": m, "params": params, "error": e.to_string()})),
    })
}

fn rational_mle_sweep(n_max: usize) -> Tally {
    let toric: Vec<Perm> = all_upto(n_max).into_iter().filter(matrix_schubert::toric_by_patterns).collect();
    let mut tally = par_tally(&toric, |w, t| {
        let models = qi_from_toric(w).unwrap();
        let l_graph = matrix_schubert::weight_graph(regions(w).l.cells.iter().copied());
        let mut covered = 0;
        for q in &models {
            t.check(rational_mle(q), "rational-mle", || json!({"w": w, "model": q}));
            let relabeled: BTreeSet<(Vertex, Vertex)> =
                q.states.iter().map(|&(i, j)| (Vertex::Plain(q.rows[i - 1]), Vertex::Star(q.cols[j - 1]))).collect();
            let comp: BTreeSet<(Vertex, Vertex)> =
                l_graph.edges().iter().copied().filter(|e| relabeled.contains(e)).collect();
            t.check(comp == relabeled, "graph", || json!({"w": w, "model": q}));
            covered += relabeled.len();
        }
        t.check(covered == l_graph.num_edges(), "cover", || json!({"w": w, "models": models}));
    });
    tally.check(!rational_mle(&double_square()), "double-square", || json!({}));
    tally
}

fn doubly_chordal(n_max: usize) -> Tally {
    let mut shapes = Vec::new();
    for a in 1..=n_max {
        for b in a..=n_max {
            if a * b <= 16 {
                shapes.push((a, b));
            }
        }
    }
    let items: Vec<(usize, usize, u32)> =
        shapes.iter().flat_map(|&(a, b)| (0..1u32 << (a * b)).map(move |mask| (a, b, mask))).collect();
    par_tally(&items, |&(a, b, mask), t| {
        let mut g = DiGraph::new();
        for bit in 0..a * b {
            if mask >> bit & 1 == 1 {
                g.add_edge(Vertex::Plain(bit / b + 1), Vertex::Star(bit % b + 1));
            }
        }
        let fast = crate::graph::doubly_chordal_bipartite(&g).unwrap();
        let brute = doubly_chordal_brute(&g);
        t.check(fast == brute, "disagree", || json!({"a": a, "b": b, "mask": mask, "fast": fast, "brute": brute}));
    })
}
