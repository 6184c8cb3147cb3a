//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any
//! failure. Tolerances and runtime limits are fixed below.

mod common;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use kch_core::chain::{ChainSpec, ValidatedChainSpec, Vertex};
use kch_core::circuit::{CircuitError, Node, ResistorNetwork, Weight};
use kch_core::extremal::{enumerate, size_vectors, summarize, ExtremalReport, Verdict, DEFAULT_CAP};
use kch_core::isomer::{
    cut_difference_check, eligible_attachments, eligible_flips, first_polygon_bases, flip, flip_check,
    flip_cut, last_polygon_check, last_polygon_profile, pendant_check, rung_flanking_cuts, st_flip, IsomerCut,
    PendantPathGadget,
};
use kch_core::kirchhoff::{metric_check, resistance_oracle, ResistanceOracle};
use kch_core::number::{integer, ratio};
use kch_core::Rational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Exact comparisons throughout: zero tolerance on every rational equality.
const RANDOM_NETWORKS: usize = 200;
const RANDOM_NETWORK_NODES: usize = 12;
const RANDOM_CUTS: usize = 200;
const RANDOM_CUT_NODES: usize = 12;
const CUT_CHAIN_MAX_VERTICES: usize = 16;
const SEED: u64 = 0x5eed_cafe;

const LIMIT_CYCLES: Duration = Duration::from_secs(1);
const LIMIT_ENGINES: Duration = Duration::from_secs(60);
const LIMIT_CUTS: Duration = Duration::from_secs(120);
const LIMIT_FLIPS: Duration = Duration::from_secs(300);
const LIMIT_EXTREMES: Duration = Duration::from_secs(600);
const LIMIT_PATTERNS: Duration = Duration::from_secs(600);

struct Outcome {
    id: usize,
    title: &'static str,
    ok: bool,
    detail: String,
    elapsed: Duration,
    limit: Option<Duration>,
}

impl Outcome {
    fn passed(&self) -> bool {
        self.ok && self.limit.is_none_or(|l| self.elapsed <= l)
    }
}

/// Metric checks over every oracle the suite builds.
#[derive(Default)]
struct Metrics {
    oracles: usize,
    triples: usize,
    failures: Vec<String>,
}

impl Metrics {
    fn check(&mut self, oracle: &ResistanceOracle, what: &dyn std::fmt::Display) {
        let report = metric_check(oracle);
        self.oracles += 1;
        self.triples += report.triples_checked;
        if let Some(v) = report.violation {
            self.failures.push(format!("{what}: {v:?}"));
        }
    }

    fn oracle(&mut self, net: &ResistorNetwork, what: &dyn std::fmt::Display) -> ResistanceOracle {
        let o = resistance_oracle(net).expect("connected network");
        self.check(&o, what);
        o
    }
}

fn cycle(k: usize) -> ResistorNetwork {
    ResistorNetwork::from_resistors((0..k).map(|i| (Node::Aux(i), Node::Aux((i + 1) % k), Weight::one()))).unwrap()
}

fn spec(sizes: &[usize], w: &[usize]) -> ValidatedChainSpec {
    ChainSpec::new(sizes.to_vec(), w.to_vec()).validate().unwrap()
}

fn first_failure(failures: &[String]) -> String {
    failures.first().map_or(String::new(), |f| format!("; first failure: {f}"))
}

fn criterion_cycles(metrics: &mut Metrics) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for k in 4..=12usize {
        let net = cycle(k);
        let oracle = metrics.oracle(&net, &format_args!("C{k}"));
        let ki = k as i64;
        let kf = oracle.kirchhoff_index();
        if kf != ratio(ki * ki * ki - ki, 12) {
            failures.push(format!("Kf(C{k}) = {kf}"));
        }
        for d in 1..k {
            let expected = ratio((d * (k - d)) as i64, ki);
            let by_reduction = net.two_terminal_resistance(&Node::Aux(0), &Node::Aux(d)).unwrap();
            let by_laplacian = oracle.resistance_at(0, d);
            if by_reduction != expected || by_laplacian != expected {
                failures.push(format!("C{k} d={d}: reduction {by_reduction}, laplacian {by_laplacian}"));
            }
        }
    }
    Outcome {
        id: 1,
        title: "cycle closed form",
        ok: failures.is_empty(),
        detail: format!("k = 4..12, Kf = (k^3-k)/12 and r = d(k-d)/k{}", first_failure(&failures)),
        elapsed: start.elapsed(),
        limit: Some(LIMIT_CYCLES),
    }
}

fn criterion_engines(metrics: &mut Metrics) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let (mut chains, mut pairs) = (0, 0);
    for n in 1..=4 {
        for sizes in size_vectors(n, 4..=7) {
            for s in enumerate(&sizes, DEFAULT_CAP).unwrap() {
                let net = s.build_graph().to_network();
                let oracle = metrics.oracle(&net, &s);
                chains += 1;
                for (u, v, r) in oracle.pairs() {
                    if u >= v {
                        continue;
                    }
                    pairs += 1;
                    match net.two_terminal_resistance(&u, &v) {
                        Ok(x) if x == r => {}
                        other => failures.push(format!("{s} {u}-{v}: {other:?} vs {r}")),
                    }
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut networks, mut stalled, mut net_pairs) = (0, 0, 0);
    while networks < RANDOM_NETWORKS {
        let net = common::weighted_network(&mut rng, RANDOM_NETWORK_NODES);
        let mut results = Vec::new();
        let mut stuck = false;
        for u in net.nodes() {
            for v in net.nodes().range(u..).skip(1) {
                match net.two_terminal_resistance(u, v) {
                    Ok(x) => results.push((*u, *v, x)),
                    Err(CircuitError::Irreducible { .. }) => stuck = true,
                    Err(e) => failures.push(format!("random network: {e}")),
                }
            }
        }
        if stuck {
            stalled += 1;
            continue;
        }
        let oracle = metrics.oracle(&net, &"random network");
        for (u, v, x) in results {
            net_pairs += 1;
            let r = oracle.resistance(&u, &v).unwrap();
            if x != r {
                failures.push(format!("random network {u}-{v}: {x} vs {r}"));
            }
        }
        networks += 1;
    }
    Outcome {
        id: 2,
        title: "engine agreement",
        ok: failures.is_empty(),
        detail: format!(
            "{chains} chains / {pairs} pairs; {networks} random networks / {net_pairs} pairs \
             ({stalled} skipped: greedy reduction stalled){}",
            first_failure(&failures)
        ),
        elapsed: start.elapsed(),
        limit: Some(LIMIT_ENGINES),
    }
}

/// Size vectors whose chain has at most `max_vertices` vertices.
fn bounded_sizes(max_vertices: usize) -> Vec<Vec<usize>> {
    fn grow(prefix: &mut Vec<usize>, budget: usize, out: &mut Vec<Vec<usize>>) {
        // Adding a polygon of size k costs k - 2 vertices.
        for k in 4..=budget + 2 {
            prefix.push(k);
            out.push(prefix.clone());
            grow(prefix, budget - (k - 2), out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for k in 4..=max_vertices {
        let mut prefix = vec![k];
        out.push(prefix.clone());
        grow(&mut prefix, max_vertices - k, &mut out);
    }
    out
}

fn check_cut(net: &ResistorNetwork, cut: &IsomerCut, metrics: &mut Metrics, what: &dyn std::fmt::Display) -> Result<(), String> {
    let flipped = st_flip(net, cut).map_err(|e| e.to_string())?;
    metrics.oracle(net, what);
    metrics.oracle(&flipped, what);
    metrics.oracle(&net.subnetwork(&cut.a), what);
    metrics.oracle(&net.subnetwork(&cut.b), what);
    let report = cut_difference_check(net, cut).map_err(|e| e.to_string())?;
    if report.holds {
        Ok(())
    } else {
        Err(format!("{what} {}: kf_delta {} vs direct {}", report.instance, report.lhs, report.rhs))
    }
}

fn criterion_cuts(metrics: &mut Metrics) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let (mut chains, mut cuts) = (0, 0);
    for sizes in bounded_sizes(CUT_CHAIN_MAX_VERTICES) {
        for s in enumerate(&sizes, DEFAULT_CAP).unwrap() {
            let g = s.build_graph();
            assert!(g.vertex_count() <= CUT_CHAIN_MAX_VERTICES);
            let net = g.to_network();
            chains += 1;
            for cut in rung_flanking_cuts(&g).unwrap() {
                cuts += 1;
                if let Err(e) = check_cut(&net, &cut, metrics, &s) {
                    failures.push(e);
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    for _ in 0..RANDOM_CUTS {
        let (net, cut) = common::random_cut(&mut rng, RANDOM_CUT_NODES);
        if let Err(e) = check_cut(&net, &cut, metrics, &"random cut") {
            failures.push(e);
        }
    }
    Outcome {
        id: 3,
        title: "cut difference identity",
        ok: failures.is_empty(),
        detail: format!(
            "{cuts} rung-flanking cuts on {chains} chains with |V| <= {CUT_CHAIN_MAX_VERTICES}; \
             {RANDOM_CUTS} random cuts{}",
            first_failure(&failures)
        ),
        elapsed: start.elapsed(),
        limit: Some(LIMIT_CUTS),
    }
}

/// Every encoding with `n <= 5` polygons of sizes 4..=7, with exact Kf.
struct Corpus {
    families: BTreeMap<Vec<usize>, Vec<(ValidatedChainSpec, Rational)>>,
    elapsed: Duration,
}

impl Corpus {
    fn build(metrics: &mut Metrics) -> Corpus {
        let start = Instant::now();
        let mut families = BTreeMap::new();
        for n in 1..=5 {
            for sizes in size_vectors(n, 4..=7) {
                let values = enumerate(&sizes, DEFAULT_CAP)
                    .unwrap()
                    .map(|s| {
                        let kf = metrics.oracle(&s.build_graph().to_network(), &s).kirchhoff_index();
                        (s, kf)
                    })
                    .collect();
                families.insert(sizes, values);
            }
        }
        Corpus { families, elapsed: start.elapsed() }
    }

    fn kf(&self, s: &ValidatedChainSpec) -> &Rational {
        let family = &self.families[&s.sizes];
        &family.iter().find(|(t, _)| t == s).expect("encoding in corpus").1
    }

    fn encodings(&self) -> usize {
        self.families.values().map(Vec::len).sum()
    }
}

fn criterion_flips(corpus: &Corpus, metrics: &mut Metrics) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    for values in corpus.families.values() {
        for (s, kf) in values {
            for (i, d) in eligible_flips(s) {
                checked += 1;
                let report = match flip_check(s, i, d) {
                    Ok(r) => r,
                    Err(e) => {
                        failures.push(format!("{s} i={i}: {e}"));
                        continue;
                    }
                };
                // The flipped encoding's value from the corpus, computed separately.
                let target = flip(s, i, d).unwrap();
                let ordered = kf < corpus.kf(&target) && report.ordering.lhs == *kf;
                if !report.passed() || !ordered {
                    failures.push(format!("{s} i={i} {d:?}: {report:?}"));
                }
                let g = s.build_graph();
                let cut = flip_cut(&g, i, d).unwrap();
                let net = g.to_network();
                metrics.oracle(&net.subnetwork(&cut.a), s);
                metrics.oracle(&net.subnetwork(&cut.b), s);
            }
        }
    }
    Outcome {
        id: 4,
        title: "flip orderings",
        ok: failures.is_empty() && checked > 0,
        detail: format!(
            "{checked} eligible (spec, i, direction) over {} encodings, n <= 5, k in 4..=7; \
             each also realized as a graph flip and checked by the cut formula{}",
            corpus.encodings(),
            first_failure(&failures)
        ),
        elapsed: start.elapsed(),
        limit: Some(LIMIT_FLIPS),
    }
}

fn reports(corpus: &Corpus) -> Vec<ExtremalReport> {
    corpus.families.iter().map(|(sizes, values)| summarize(sizes, values.clone()).unwrap()).collect()
}

fn criterion_extremes(corpus: &Corpus, reports: &[ExtremalReport], summarizing: Duration) -> Outcome {
    let mut failures = Vec::new();
    let mut certified = 0;
    for r in reports {
        if r.helicene_min.verdict == Verdict::NotApplicable {
            continue;
        }
        certified += 1;
        for (name, flag) in [("helicene_min", &r.helicene_min), ("near_centered_max", &r.near_centered_max)] {
            if flag.verdict != Verdict::Pass {
                failures.push(format!("{:?} {name}: witness {:?}", r.sizes, flag.witness.as_ref().map(|w| &w.w)));
            }
        }
        // Strictly below every encoding outside the helicene orbit.
        let orbit = kch_core::chain::helicene(&r.sizes).unwrap().orbit();
        for (s, v) in &r.values {
            if !orbit.contains(s) && *v <= r.min {
                failures.push(format!("{s} ties the minimum"));
            }
        }
    }
    Outcome {
        id: 5,
        title: "helicene minimum and near-centered maximum",
        ok: failures.is_empty() && certified > 0,
        detail: format!(
            "{certified} families with n in 3..=5, k in 4..=7 ({} encodings evaluated){}",
            corpus.encodings(),
            first_failure(&failures)
        ),
        elapsed: corpus.elapsed + summarizing,
        limit: Some(LIMIT_EXTREMES),
    }
}

fn criterion_patterns(reports: &[ExtremalReport]) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let (mut even, mut odd) = (0, 0);
    for r in reports.iter().filter(|r| r.sizes.len() >= 3) {
        if r.sizes.iter().all(|k| *k == 4 || *k == 6) {
            even += 1;
            if r.even_centered_max.verdict != Verdict::Pass || r.argmax.len() != 1 {
                failures.push(format!("{:?}: argmax {:?}", r.sizes, r.argmax));
            }
        }
        if r.sizes.iter().all(|k| *k == 5 || *k == 7) {
            odd += 1;
            if r.odd_alternating_max.verdict != Verdict::Pass {
                failures.push(format!("{:?}: argmax {:?}", r.sizes, r.argmax));
            }
        }
    }
    Outcome {
        id: 6,
        title: "even-centered and odd-alternating maxima",
        ok: failures.is_empty() && even > 0 && odd > 0,
        detail: format!("{even} all-even families (k in {{4,6}}), {odd} all-odd families (k in {{5,7}}){}", first_failure(&failures)),
        elapsed: start.elapsed(),
        limit: Some(LIMIT_PATTERNS),
    }
}

fn criterion_metric_and_local(metrics: &mut Metrics) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();

    let mut gadgets = 0;
    for n in 1..=3 {
        for sizes in size_vectors(n, 4..=6) {
            for s in enumerate(&sizes, DEFAULT_CAP).unwrap() {
                let g = s.build_graph();
                for (a, b) in eligible_attachments(&g) {
                    for short in 0..=3 {
                        for long in short + 1..=5 {
                            let gadget = PendantPathGadget::new(g.clone(), long, short, a, b).unwrap();
                            gadgets += 1;
                            let r = pendant_check(&gadget).unwrap();
                            if !r.holds {
                                failures.push(format!("{}: {} vs {}", r.instance, r.lhs, r.rhs));
                            }
                        }
                    }
                }
            }
        }
    }

    let (mut inequalities, mut profiles) = (0, 0);
    for n in 2..=3 {
        for sizes in size_vectors(n, 4..=8) {
            for s in enumerate(&sizes, DEFAULT_CAP).unwrap() {
                let g = s.build_graph();
                for z in first_polygon_bases(&g) {
                    for r in last_polygon_check(&s, z).unwrap() {
                        inequalities += 1;
                        if !r.holds {
                            failures.push(format!("{}: {} vs {}", r.instance, r.lhs, r.rhs));
                        }
                    }
                    for (k, (direct, closed)) in last_polygon_profile(&g, z).unwrap().into_iter().enumerate() {
                        profiles += 1;
                        if direct != closed {
                            failures.push(format!("{s} from {z}, u{}: {direct} vs closed form {closed}", k + 1));
                        }
                    }
                }
            }
        }
    }

    let mut detail = format!(
        "metric axioms on {} oracles / {} ordered triples; {gadgets} pendant gadgets (j <= 3, i in j+1..=5, n <= 3, \
         k <= 6, every attachment); {inequalities} last-polygon inequalities and {profiles} closed-form \
         profile points (n <= 3, k <= 8, every base vertex)",
        metrics.oracles, metrics.triples
    );
    failures.extend(metrics.failures.iter().cloned());
    let _ = write!(detail, "{}", first_failure(&failures));
    Outcome {
        id: 7,
        title: "metric axioms, pendant transmissions, last-polygon monotonicity",
        ok: failures.is_empty() && metrics.oracles > 0,
        detail,
        elapsed: start.elapsed(),
        limit: None,
    }
}

fn criterion_frozen() -> Outcome {
    let start = Instant::now();
    let ladder = spec(&[4, 4], &[]).build_graph().to_network();
    let t0 = Node::Chain(Vertex::Top(0));
    let b0 = Node::Chain(Vertex::Bottom(0));
    let checks: [(&str, Rational, Rational); 4] = [
        ("Kf(C4)", resistance_oracle(&cycle(4)).unwrap().kirchhoff_index(), integer(5)),
        ("Kf(C6)", resistance_oracle(&cycle(6)).unwrap().kirchhoff_index(), ratio(35, 2)),
        ("Kf(ladder 4,4)", resistance_oracle(&ladder).unwrap().kirchhoff_index(), ratio(71, 5)),
        ("r(T0,B0) ladder 4,4", resistance_oracle(&ladder).unwrap().resistance(&t0, &b0).unwrap(), ratio(11, 15)),
    ];
    let failures: Vec<String> =
        checks.iter().filter(|(_, got, want)| got != want).map(|(n, got, want)| format!("{n} = {got}, expected {want}")).collect();
    Outcome {
        id: 8,
        title: "frozen vectors",
        ok: failures.is_empty(),
        detail: format!("Kf(C4)=5, Kf(C6)=35/2, Kf(ladder)=71/5, r(T0,B0)=11/15{}", first_failure(&failures)),
        elapsed: start.elapsed(),
        limit: None,
    }
}

fn main() -> ExitCode {
    let mut metrics = Metrics::default();
    let mut outcomes = Vec::new();
    let mut report = |o: Outcome| {
        let status = if o.passed() { "PASS" } else { "FAIL" };
        let time = match o.limit {
            Some(l) => format!("{:.2}s, limit {}s", o.elapsed.as_secs_f64(), l.as_secs()),
            None => format!("{:.2}s", o.elapsed.as_secs_f64()),
        };
        println!("{status} [{}] {}: {} ({time})", o.id, o.title, o.detail);
        outcomes.push(o.passed());
    };

    report(criterion_cycles(&mut metrics));
    report(criterion_engines(&mut metrics));
    report(criterion_cuts(&mut metrics));
    let corpus = Corpus::build(&mut metrics);
    report(criterion_flips(&corpus, &mut metrics));
    let start = Instant::now();
    let summaries = reports(&corpus);
    report(criterion_extremes(&corpus, &summaries, start.elapsed()));
    report(criterion_patterns(&summaries));
    report(criterion_metric_and_local(&mut metrics));
    report(criterion_frozen());

    let passed = outcomes.iter().filter(|p| **p).count();
    println!("acceptance: {passed}/{} criteria passed", outcomes.len());
    if passed == outcomes.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
