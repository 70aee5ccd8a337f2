//! Brute-force oracles and runnable check suites.
//!
//! Every claim that is testable at desk scale is packaged as a named check
//! producing a [`CheckReport`]; suites group them and take an explicit bound
//! so CI can raise the defaults. Counterexamples are reported as the smallest
//! instance in enumeration order.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use crate::core_state::{apply_move, legal_moves, RuleSet, State, Style};
use crate::graycode::{
    classical_gray, gray_block_demirror, gray_block_mirror, gray_list, hamming,
};
use crate::numeration::{fib, leading_change_index, zeckendorf, zf_value, ZfWord};
use crate::solver::{min_moves, mu_word, solve_iterative, solve_recursive, Direction};
use crate::state_graph::{
    build_graph, check_somme_mignonne, embed, is_strongly_connected, k33_minor_f2,
    pseudo_edge_target, shortest_path, state_from_index,
};
use crate::{Error, Result};

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub check_name: String,
    pub parameters: BTreeMap<String, String>,
    pub passed: bool,
    pub details: String,
    pub elapsed: Duration,
}

impl CheckReport {
    /// One line of structured text: name, params, pass/fail, details.
    pub fn line(&self) -> String {
        let params: Vec<String> = self
            .parameters
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let status = if self.passed { "PASS" } else { "FAIL" };
        let mut line = format!("{} [{}] {}", self.check_name, params.join(","), status);
        if !self.details.is_empty() {
            line.push(' ');
            line.push_str(&self.details);
        }
        line
    }
}

fn run_check(
    name: &str,
    params: &[(&str, String)],
    body: impl FnOnce() -> Result<std::result::Result<(), String>>,
) -> CheckReport {
    let start = Instant::now();
    let (passed, details) = match body() {
        Ok(Ok(())) => (true, String::new()),
        Ok(Err(counterexample)) => (false, counterexample),
        Err(e) => (false, format!("error: {e}")),
    };
    CheckReport {
        check_name: name.to_string(),
        parameters: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        passed,
        details,
        elapsed: start.elapsed(),
    }
}

/// BFS ground truth: distance and exact shortest-path count from the full
/// tower on A to the full tower on C.
pub fn oracle_min_moves(n: u32, rules: &RuleSet) -> Result<(u64, BigUint)> {
    let g = build_graph(n, rules)?;
    let r = shortest_path(&g, &State::initial(n), &State::goal(n));
    let d = r
        .distance
        .ok_or_else(|| Error::Domain(format!("goal unreachable for n={n}")))?;
    Ok((d, r.count))
}

/// All nonzero ZF-words of length at most `max_len`, canonical forms, each
/// exactly once: length ascending, lexicographic within a length.
pub fn enumerate_zf_words(max_len: u32) -> Result<Vec<ZfWord>> {
    if max_len > 25 {
        return Err(Error::Domain(format!(
            "enumerate_zf_words bound {max_len} exceeds 25"
        )));
    }
    let mut out = Vec::new();
    for len in 1..=max_len as usize {
        let mut digits = vec![0u8; len];
        digits[0] = 1;
        extend_words(&mut digits, 1, &mut out);
    }
    Ok(out)
}

fn extend_words(digits: &mut Vec<u8>, pos: usize, out: &mut Vec<ZfWord>) {
    if pos == digits.len() {
        out.push(ZfWord::from_digits(digits).expect("constructed without 11"));
        return;
    }
    let choices: &[u8] = if digits[pos - 1] == 1 { &[0] } else { &[0, 1] };
    for &d in choices {
        digits[pos] = d;
        extend_words(digits, pos + 1, out);
    }
}

const PQ_CASES: [(u32, u32); 6] = [(1, 0), (1, 1), (1, 2), (2, 1), (2, 2), (3, 1)];

fn numeration_checks(max_k: u128) -> Vec<CheckReport> {
    let params = [("max_k", max_k.to_string())];
    vec![
        run_check("numeration.no_factor_11", &params, || {
            for k in 0..=max_k {
                let w = zeckendorf(k);
                if w.to_string().contains("11") {
                    return Ok(Err(format!("zeckendorf({k}) = {w}")));
                }
            }
            Ok(Ok(()))
        }),
        run_check("numeration.roundtrip", &params, || {
            for k in 0..=max_k {
                if zf_value(&zeckendorf(k))? != k {
                    return Ok(Err(format!("roundtrip broken at k={k}")));
                }
            }
            Ok(Ok(()))
        }),
        run_check("numeration.uniqueness", &[("bound", "F_20".into())], || {
            let bound = fib(20)? as usize;
            let mut counts = vec![0u32; bound];
            for w in enumerate_zf_words(18)? {
                let v = zf_value(&w)? as usize;
                if v < bound {
                    counts[v] += 1;
                }
            }
            for (k, &c) in counts.iter().enumerate().skip(1) {
                if c != 1 {
                    return Ok(Err(format!("value {k} has {c} ZF-words")));
                }
            }
            Ok(Ok(()))
        }),
        run_check("numeration.carry_at_fibonacci", &[("max_n", "25".into())], || {
            for n in 2..=25 {
                let got = leading_change_index(fib(n + 1)?)?;
                if got != n + 1 {
                    return Ok(Err(format!("leading change of F_{} is {got}", n + 1)));
                }
            }
            Ok(Ok(()))
        }),
    ]
}

fn optimality_checks(max_n: u32) -> Vec<CheckReport> {
    let params = [("max_n", max_n.to_string())];
    let mut reports = vec![run_check("optimality.closed_forms", &params, || {
        for n in 0..=20 {
            let fibo = min_moves(n, &RuleSet::fibonacci(Style::Original))?;
            if fibo != fib(n + 2)? - 1 {
                return Ok(Err(format!("fibonacci count wrong at n={n}")));
            }
        }
        Ok(Ok(()))
    })];
    for style in [Style::Original, Style::Variant] {
        reports.push(run_check(
            "optimality.fibonacci_bfs",
            &[("max_n", max_n.to_string()), ("style", format!("{style:?}"))],
            move || {
                let rules = RuleSet::fibonacci(style);
                for n in 0..=max_n {
                    let (d, count) = oracle_min_moves(n, &rules)?;
                    if u128::from(d) != min_moves(n, &rules)? {
                        return Ok(Err(format!("distance mismatch at n={n}")));
                    }
                    if count != BigUint::from(1u32) {
                        return Ok(Err(format!("{count} optimal paths at n={n}")));
                    }
                }
                Ok(Ok(()))
            },
        ));
    }
    reports.push(run_check("optimality.classical_bfs", &params, || {
        let rules = RuleSet::classical();
        for n in 0..=max_n {
            let (d, count) = oracle_min_moves(n, &rules)?;
            if u128::from(d) != (1u128 << n) - 1 || count != BigUint::from(1u32) {
                return Ok(Err(format!("classical BFS disagrees at n={n}")));
            }
        }
        Ok(Ok(()))
    }));
    reports.push(run_check("optimality.pq_bfs", &params, || {
        for (p, q) in PQ_CASES {
            let rules = RuleSet::pq(p, q)?;
            for n in 0..=max_n.min(7) {
                let (d, count) = oracle_min_moves(n, &rules)?;
                if u128::from(d) != min_moves(n, &rules)? {
                    return Ok(Err(format!("(p,q)=({p},{q}) distance mismatch at n={n}")));
                }
                if count != BigUint::from(1u32) {
                    return Ok(Err(format!("(p,q)=({p},{q}) has {count} optima at n={n}")));
                }
            }
        }
        Ok(Ok(()))
    }));
    reports.push(run_check("optimality.linear_bfs", &params, || {
        let rules = RuleSet::fibonacci_linear();
        for n in 0..=max_n {
            let (d, _) = oracle_min_moves(n, &rules)?;
            if u128::from(d) != min_moves(n, &rules)? {
                return Ok(Err(format!("linear distance mismatch at n={n}")));
            }
        }
        Ok(Ok(()))
    }));
    reports.push(run_check(
        "optimality.iterative_equals_recursive",
        &[("max_n", "16".into())],
        || {
            for style in [Style::Original, Style::Variant] {
                let rules = RuleSet::fibonacci(style);
                for n in 0..=16 {
                    let it = solve_iterative(n, &rules)?;
                    let rec = solve_recursive(n, &rules)?;
                    if it.moves != rec.moves {
                        return Ok(Err(format!("solvers diverge at n={n}, {style:?}")));
                    }
                }
            }
            Ok(Ok(()))
        },
    ));
    reports.push(run_check("optimality.per_disk_counts", &[("max_n", "16".into())], || {
        for n in 0..=16u32 {
            let sol = solve_recursive(n, &RuleSet::fibonacci(Style::Original))?;
            for k in 1..=n {
                if sol.moves_of_disk(k) as u128 != fib(n + 1 - k)? {
                    return Ok(Err(format!("disk {k} count wrong at n={n}")));
                }
            }
        }
        Ok(Ok(()))
    }));
    reports.push(run_check("optimality.mu_balance", &[("max_n", "24".into())], || {
        for n in 0..=24u32 {
            let mu = mu_word(n)?;
            let r = mu.count(Direction::Right) as i64;
            let l = mu.count(Direction::Left) as i64;
            let ok = match n % 3 {
                0 => r == l,
                1 => l - r == 1,
                _ => r - l == 1,
            };
            if !ok {
                return Ok(Err(format!("balance law fails at n={n} (l={l}, r={r})")));
            }
        }
        Ok(Ok(()))
    }));
    reports
}

fn gray_checks(max_n: u32) -> Vec<CheckReport> {
    let params = [("max_n", max_n.to_string())];
    vec![
        run_check("gray.bijection_with_zf_words", &params, || {
            for n in 1..=max_n.min(16) {
                let mut listed: Vec<String> = gray_list(n)
                    .into_iter()
                    .map(|w| w.trim_start_matches('0').to_string())
                    .collect();
                let mut expected: Vec<String> = enumerate_zf_words(n)?
                    .iter()
                    .map(|w| w.to_string())
                    .collect();
                listed.sort();
                expected.sort();
                if listed != expected {
                    return Ok(Err(format!("enumeration differs at n={n}")));
                }
                if listed.windows(2).any(|w| w[0] == w[1]) {
                    return Ok(Err(format!("duplicate word at n={n}")));
                }
            }
            Ok(Ok(()))
        }),
        run_check("gray.hamming_pattern", &params, || {
            let n = max_n.min(16);
            let words = gray_list(n);
            let boundaries: Vec<u128> = (3..=n + 2).map(fib).collect::<Result<_>>()?;
            for m in 1..words.len() {
                let expect = if boundaries.contains(&(m as u128 + 1)) { 2 } else { 1 };
                if hamming(&words[m - 1], &words[m]) != expect {
                    return Ok(Err(format!("pair (g_{m}, g_{}) has wrong distance", m + 1)));
                }
            }
            Ok(Ok(()))
        }),
        run_check("gray.demirror_equals_mirror", &params, || {
            for n in 2..=max_n.min(16) {
                if gray_block_demirror(n)? != gray_block_mirror(n) {
                    return Ok(Err(format!("constructions differ at n={n}")));
                }
            }
            Ok(Ok(()))
        }),
        run_check("gray.q_uniqueness", &params, || {
            for n in 4..=max_n.min(16) {
                let words = gray_block_mirror(n - 1).words;
                for m in 0..words.len() as i64 {
                    let mut best: Option<i64> = None;
                    let mut ties = 0;
                    for q in [0i64, -1, 1, -2, 2] {
                        let idx = m + q;
                        if idx < 0 || idx >= words.len() as i64 {
                            continue;
                        }
                        if words[idx as usize].ends_with('1') {
                            match best {
                                None => {
                                    best = Some(q);
                                    ties = 1;
                                }
                                Some(b) if q.abs() == b.abs() => ties += 1,
                                _ => {}
                            }
                        }
                    }
                    if best.is_none() || ties != 1 {
                        return Ok(Err(format!("q not unique at n={n}, m={m}")));
                    }
                }
            }
            Ok(Ok(()))
        }),
        run_check("gray.length_increasing_minimality", &[("max_len", "5".into())], || {
            // All 1*1*2*6*120 = 1440 length-increasing orderings of the
            // ZF-words of length <= 5, checked pointwise against the code.
            let gray = gray_list(5);
            let blocks: Vec<Vec<String>> = (1..=5)
                .map(|n| gray_block_mirror(n).words)
                .collect();
            let mut orderings = vec![Vec::new()];
            for block in &blocks {
                let perms = permutations(block.len());
                let mut next = Vec::with_capacity(orderings.len() * perms.len());
                for prefix in &orderings {
                    for perm in &perms {
                        let mut seq: Vec<String> = prefix.clone();
                        seq.extend(perm.iter().map(|&i| block[i].clone()));
                        next.push(seq);
                    }
                }
                orderings = next;
            }
            if orderings.len() != 1440 {
                return Ok(Err(format!("expected 1440 orderings, got {}", orderings.len())));
            }
            for seq in &orderings {
                for m in 1..seq.len() {
                    if hamming(&seq[m - 1], &seq[m]) < hamming(&gray[m - 1], &gray[m]) {
                        return Ok(Err(format!(
                            "ordering beats the code at position {m}: {} -> {}",
                            seq[m - 1],
                            seq[m]
                        )));
                    }
                }
            }
            Ok(Ok(()))
        }),
        run_check("gray.classical_adjacency", &[("max_n", "12".into())], || {
            for n in 1..=12 {
                let list = classical_gray(n);
                for (m, pair) in list.windows(2).enumerate() {
                    if hamming(&pair[0], &pair[1]) != 1 {
                        return Ok(Err(format!("distance != 1 at n={n}, position {m}")));
                    }
                }
            }
            Ok(Ok(()))
        }),
        run_check("gray.classical_digit_disk_link", &[("max_n", "10".into())], || {
            // The leftmost changing binary digit from i to i+1 names the disk
            // moved at step i+1 of the classical solution.
            for n in 1..=10u32 {
                let sol = solve_recursive(n, &RuleSet::classical())?;
                for (i, mv) in sol.moves.iter().enumerate() {
                    let digit = (i as u64).trailing_ones() + 1;
                    if digit != mv.disk {
                        return Ok(Err(format!("step {} moves d_{}, digit says {digit}", i + 1, mv.disk)));
                    }
                }
            }
            Ok(Ok(()))
        }),
    ]
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    permute(&mut items, 0, &mut out);
    out
}

fn permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, out);
        items.swap(k, i);
    }
}

fn graph_checks(max_n: u32) -> Vec<CheckReport> {
    let params = [("max_n", max_n.to_string())];
    let mut reports = vec![run_check("graph.edges_match_apply", &params, || {
        let families = [
            RuleSet::classical(),
            RuleSet::fibonacci(Style::Original),
            RuleSet::fibonacci(Style::Variant),
            RuleSet::pq(2, 1)?,
            RuleSet::pq(2, 2)?,
        ];
        for rules in &families {
            for n in 0..=max_n.min(5) {
                let g = build_graph(n, rules)?;
                for (code, edges) in g.adj.iter().enumerate() {
                    let s = state_from_index(code as u64, n);
                    for (u, mv) in edges {
                        let t = apply_move(&s, mv, rules)?;
                        if crate::state_graph::state_index(&t) != *u {
                            return Ok(Err(format!("edge mismatch at {s} under {:?}", rules.family)));
                        }
                    }
                }
            }
        }
        Ok(Ok(()))
    })];
    for style in [Style::Original, Style::Variant] {
        reports.push(run_check(
            "graph.strongly_connected",
            &[("max_n", max_n.to_string()), ("style", format!("{style:?}"))],
            move || {
                for n in 0..=max_n {
                    let g = build_graph(n, &RuleSet::fibonacci(style))?;
                    let (ok, comps) = is_strongly_connected(&g);
                    if !ok {
                        return Ok(Err(format!("{comps} components at n={n}")));
                    }
                }
                Ok(Ok(()))
            },
        ));
    }
    reports.push(run_check("graph.classical_connected", &params, || {
        for n in 0..=max_n {
            // Classical moves are reversible, so strong connectivity of the
            // directed graph doubles as undirected connectivity.
            let g = build_graph(n, &RuleSet::classical())?;
            let (ok, comps) = is_strongly_connected(&g);
            if !ok {
                return Ok(Err(format!("{comps} components at n={n}")));
            }
        }
        Ok(Ok(()))
    }));
    reports.push(run_check("graph.k33_minor", &[], || {
        if !k33_minor_f2(&RuleSet::fibonacci(Style::Original))? {
            return Ok(Err("Fibonacci contraction misses K3,3".into()));
        }
        if !k33_minor_f2(&RuleSet::fibonacci(Style::Variant))? {
            return Ok(Err("variant contraction misses K3,3".into()));
        }
        if k33_minor_f2(&RuleSet::classical())? {
            return Ok(Err("classical contraction should not contain K3,3".into()));
        }
        Ok(Ok(()))
    }));
    reports.push(run_check("graph.pseudo_edges", &params, || {
        let variant = RuleSet::fibonacci(Style::Variant);
        for n in 0..=max_n {
            for code in 0..3u64.pow(n) {
                let v = state_from_index(code, n);
                for mv in legal_moves(&v, &variant)? {
                    if mv.disk < 2 {
                        continue;
                    }
                    let expected = apply_move(&v, &mv, &variant)?;
                    if pseudo_edge_target(&v, mv.disk)? != expected {
                        return Ok(Err(format!("jump misses at {v}, k={}", mv.disk)));
                    }
                }
            }
        }
        Ok(Ok(()))
    }));
    reports.push(run_check("graph.embed_injective", &params, || {
        for n in 0..=max_n {
            let mut seen = std::collections::HashSet::new();
            for code in 0..3u64.pow(n) {
                let c = embed(&state_from_index(code, n));
                if !seen.insert((c.x, c.y)) {
                    return Ok(Err(format!("coordinate collision at n={n}")));
                }
            }
        }
        Ok(Ok(()))
    }));
    reports
}

fn identity_checks(max_n: u32) -> Vec<CheckReport> {
    vec![run_check(
        "identity.somme_mignonne",
        &[("max_n", max_n.to_string())],
        || {
            for n in 0..=max_n {
                if !check_somme_mignonne(n)? {
                    return Ok(Err(format!("identity fails at n={n}")));
                }
            }
            Ok(Ok(()))
        },
    )]
}

/// Runs a named suite. `max_n` overrides the suite's primary bound
/// (defaults: optimality 6, gray 12, graph 6, identity 30).
pub fn run_suite(name: &str, max_n: Option<u32>) -> Result<Vec<CheckReport>> {
    match name {
        "numeration" => Ok(numeration_checks(
            max_n.map(u128::from).unwrap_or(100_000),
        )),
        "optimality" => Ok(optimality_checks(max_n.unwrap_or(6))),
        "gray" => Ok(gray_checks(max_n.unwrap_or(12))),
        "graph" => Ok(graph_checks(max_n.unwrap_or(6))),
        "identity" => Ok(identity_checks(max_n.unwrap_or(30))),
        "all" => {
            let mut all = numeration_checks(100_000);
            all.extend(optimality_checks(max_n.unwrap_or(6)));
            all.extend(gray_checks(12));
            all.extend(graph_checks(max_n.unwrap_or(6)));
            all.extend(identity_checks(30));
            Ok(all)
        }
        other => Err(Error::UnknownSuite(other.to_string())),
    }
}
