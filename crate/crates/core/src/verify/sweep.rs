//! Parameter sweeps driven by a JSON config.

use std::collections::BTreeSet;
use std::path::PathBuf;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::box_domain::BoxDomain;
use crate::characters::{AddCharParam, MultChar};
use crate::charsums::{partial_gauss_sum_with, ps_report, weil_report, RootMultiset};
use crate::field::{find_irreducible, FieldElement, FieldError, FieldOptions, FieldSpec};
use crate::par::{map_indexed, Execution};
use crate::report::{BoundReport, OutputFormat, Theorem};

use super::{energy_rows, mixed_rows, pure_rows, CheckOptions, VerifyError, ENERGY_CHECKS, MIXED_CHECKS, PURE_CHECKS};

/// "all", an explicit list of encodings or exponents, or k random picks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Selection {
    Keyword(String),
    List(Vec<u64>),
    Random { random: usize },
}

impl Default for Selection {
    fn default() -> Self {
        Selection::Keyword("all".into())
    }
}

impl Selection {
    fn validate(&self, what: &str) -> Result<(), VerifyError> {
        match self {
            Selection::Keyword(k) if k != "all" => Err(VerifyError::ConfigInvalid(format!(
                "{what}: expected \"all\", a list or {{\"random\": k}}, got \"{k}\""
            ))),
            _ => Ok(()),
        }
    }

    /// Values from `lo..hi`, ascending and distinct.
    fn pick(&self, lo: u64, hi: u64, rng: &mut ChaCha8Rng) -> Vec<u64> {
        match self {
            Selection::Keyword(_) => (lo..hi).collect(),
            Selection::List(v) => v.iter().copied().collect::<BTreeSet<_>>().into_iter().collect(),
            Selection::Random { random } => {
                let span = hi.saturating_sub(lo);
                let k = (*random as u64).min(span);
                let mut v: Vec<u64> = if span <= usize::MAX as u64 / 2 && span <= 1 << 32 {
                    sample(rng, span as usize, k as usize).into_iter().map(|i| lo + i as u64).collect()
                } else {
                    let mut s = BTreeSet::new();
                    while (s.len() as u64) < k {
                        s.insert(rng.random_range(lo..hi));
                    }
                    s.into_iter().collect()
                };
                v.sort_unstable();
                v
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum BoxGen {
    /// Every side vector with H_j ≤ max_side and |B| ≤ max_card. Offsets are
    /// exhaustive for n = 1 and {0, 1, ⌊(p−1−H)/2⌋, p−1−H} per coordinate otherwise.
    Exhaustive {
        #[serde(default)]
        max_side: Option<u64>,
        #[serde(default)]
        max_card: Option<u64>,
    },
    /// Uniform sides in 1..=max_side, then uniform offsets.
    Random {
        count: usize,
        #[serde(default)]
        max_side: Option<u64>,
    },
    /// Sides H_j = ⌈p^exponent⌉ with uniform offsets.
    SidePower { exponent: f64, count: usize },
    /// A fixed "N1:H1,…" box.
    Explicit { spec: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeilGen {
    pub count: usize,
    #[serde(default = "default_max_roots")]
    pub max_roots: usize,
    #[serde(default = "default_max_multiplicity")]
    pub max_multiplicity: u64,
}

fn default_max_roots() -> usize {
    6
}

fn default_max_multiplicity() -> u64 {
    4
}

impl Default for WeilGen {
    fn default() -> Self {
        Self { count: 20, max_roots: default_max_roots(), max_multiplicity: default_max_multiplicity() }
    }
}

fn default_degrees() -> Vec<usize> {
    vec![1]
}

fn default_seeds() -> Vec<u64> {
    vec![0]
}

fn default_twists() -> Selection {
    Selection::List(vec![0])
}

fn default_boxes() -> Vec<BoxGen> {
    vec![BoxGen::Random { count: 4, max_side: None }]
}

fn default_ps() -> Selection {
    Selection::Random { random: 4 }
}

fn default_r() -> u32 {
    2
}

fn default_eps() -> f64 {
    0.25
}

fn default_format() -> String {
    "csv".into()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default)]
    pub primes: Vec<u64>,
    #[serde(default = "default_degrees")]
    pub degrees: Vec<usize>,
    #[serde(default = "default_seeds")]
    pub modulus_seeds: Vec<u64>,
    /// Character exponents; "all" means every nontrivial one.
    #[serde(default)]
    pub characters: Selection,
    /// Twist encodings.
    #[serde(default = "default_twists")]
    pub twists: Selection,
    #[serde(default = "default_boxes")]
    pub boxes: Vec<BoxGen>,
    #[serde(default)]
    pub checks: Vec<String>,
    #[serde(default = "default_r")]
    pub r: u32,
    #[serde(default = "default_eps")]
    pub eps: f64,
    #[serde(default)]
    pub delta: f64,
    #[serde(default)]
    pub tau: Option<f64>,
    #[serde(default)]
    pub weil: WeilGen,
    /// Generating elements g for the shifted-line sums, by encoding.
    #[serde(default = "default_ps")]
    pub ps_elements: Selection,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default = "default_format")]
    pub format: String,
}

impl Default for SweepConfig {
    fn default() -> Self {
        serde_json::from_str("{}").expect("defaults deserialize")
    }
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self, VerifyError> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| VerifyError::ConfigInvalid(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn parsed_checks(&self) -> Result<Vec<Theorem>, VerifyError> {
        let mut out = Vec::new();
        for c in &self.checks {
            let t: Theorem = c.parse().map_err(|_| VerifyError::ConfigInvalid(format!("unknown check '{c}'")))?;
            if !out.contains(&t) {
                out.push(t);
            }
        }
        Ok(out)
    }

    pub fn output_format(&self) -> Result<OutputFormat, VerifyError> {
        self.format.parse().map_err(|_| VerifyError::ConfigInvalid(format!("unknown format '{}'", self.format)))
    }

    pub fn options(&self) -> CheckOptions {
        CheckOptions { r: self.r, eps: self.eps, delta: self.delta, tau: self.tau }
    }

    /// Field-independent validation.
    pub fn validate(&self) -> Result<(), VerifyError> {
        let invalid = |m: String| Err(VerifyError::ConfigInvalid(m));
        let checks = self.parsed_checks()?;
        self.output_format()?;
        self.characters.validate("characters")?;
        self.twists.validate("twists")?;
        self.ps_elements.validate("ps_elements")?;
        if self.degrees.contains(&0) {
            return invalid("degrees must be positive".into());
        }
        if self.r == 0 || (self.r < 2 && checks.contains(&Theorem::Burgess3)) {
            return invalid(format!("r = {} is too small for the requested checks", self.r));
        }
        if !(self.eps > 0.0 && self.eps.is_finite()) || (checks.contains(&Theorem::Thm7) && self.eps > 0.25) {
            return invalid(format!("eps = {} is out of range", self.eps));
        }
        if !(self.delta >= 0.0 && self.delta.is_finite()) {
            return invalid(format!("delta = {} must be nonnegative", self.delta));
        }
        if self.tau.is_some_and(|t| !(t > 0.0 && t.is_finite())) {
            return invalid("tau must be positive".into());
        }
        if self.weil.max_roots == 0 || self.weil.max_multiplicity == 0 {
            return invalid("weil.max_roots and weil.max_multiplicity must be positive".into());
        }
        for b in &self.boxes {
            match b {
                BoxGen::Exhaustive { max_side: Some(0), .. } | BoxGen::Random { max_side: Some(0), .. } => {
                    return invalid("max_side must be positive".into());
                }
                BoxGen::SidePower { exponent, .. } if !(*exponent >= 0.0 && *exponent < 1.0) => {
                    return invalid(format!("side_power exponent {exponent} must lie in [0, 1)"));
                }
                _ => {}
            }
        }
        Ok(())
    }
}

/// What a single unit of sweep work evaluates.
enum Case {
    Energy { bx: usize },
    Sum { chi: u64, a: u64, bx: usize, pure: bool },
    Weil { chi: u64, f: RootMultiset },
    Ps { chi: u64, g: FieldElement, a: u64 },
}

struct FieldRun {
    field: FieldSpec,
    seed: u64,
    boxes: Vec<BoxDomain>,
    cases: Vec<Case>,
}

fn build_field(p: u64, n: usize, seed: u64) -> Result<FieldSpec, VerifyError> {
    let invalid = |e: &dyn std::fmt::Display| VerifyError::ConfigInvalid(format!("field ({p}, {n}, seed {seed}): {e}"));
    if n == 0 {
        return Err(invalid(&"degree must be positive"));
    }
    // Validate before searching for a modulus.
    if !crate::field::is_odd_prime(p) {
        return Err(invalid(&FieldError::NotPrime(p)));
    }
    if (p as f64).powi(n as i32) >= crate::field::MAX_FIELD_SIZE as f64 {
        return Err(invalid(&FieldError::FieldTooLarge { p, n }));
    }
    let modulus = find_irreducible(p, n, seed);
    FieldSpec::new(p, n, Some(&modulus), &FieldOptions { modulus_seed: seed, ..FieldOptions::default() })
        .map_err(|e| invalid(&e))
}

fn stream(base: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(base);
    rng.set_stream(id);
    rng
}

fn generate_boxes(field: &FieldSpec, gens: &[BoxGen], rng: &mut ChaCha8Rng) -> Result<Vec<BoxDomain>, VerifyError> {
    let p = field.p();
    let n = field.n();
    let mut out = Vec::new();
    let push = |out: &mut Vec<BoxDomain>, offsets: &[u64], sides: &[u64]| -> Result<(), VerifyError> {
        out.push(BoxDomain::new(field, offsets, sides, None).map_err(|e| VerifyError::ConfigInvalid(e.to_string()))?);
        Ok(())
    };
    for g in gens {
        match g {
            BoxGen::Exhaustive { max_side, max_card } => {
                let hmax = max_side.unwrap_or(p - 1).min(p - 1);
                let cmax = max_card.unwrap_or(10_000);
                for sides in side_vectors(n, hmax, cmax) {
                    for offsets in offset_vectors(p, &sides) {
                        push(&mut out, &offsets, &sides)?;
                    }
                }
            }
            BoxGen::Random { count, max_side } => {
                let hmax = max_side.unwrap_or(p - 1).min(p - 1);
                for _ in 0..*count {
                    let sides: Vec<u64> = (0..n).map(|_| rng.random_range(1..=hmax)).collect();
                    let offsets: Vec<u64> = sides.iter().map(|&h| rng.random_range(0..=p - 1 - h)).collect();
                    push(&mut out, &offsets, &sides)?;
                }
            }
            BoxGen::SidePower { exponent, count } => {
                let h = ((p as f64).powf(*exponent).ceil() as u64).clamp(1, p - 1);
                for _ in 0..*count {
                    let sides = vec![h; n];
                    let offsets: Vec<u64> = sides.iter().map(|&h| rng.random_range(0..=p - 1 - h)).collect();
                    push(&mut out, &offsets, &sides)?;
                }
            }
            BoxGen::Explicit { spec } => {
                let bx = BoxDomain::parse(field, spec, None).map_err(|e| VerifyError::ConfigInvalid(e.to_string()))?;
                out.push(bx);
            }
        }
    }
    Ok(out)
}

/// Side vectors in lexicographic order with entries ≤ hmax and product ≤ cmax.
pub(crate) fn side_vectors(n: usize, hmax: u64, cmax: u64) -> Vec<Vec<u64>> {
    fn rec(n: usize, hmax: u64, budget: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for h in 1..=hmax.min(budget) {
            cur.push(h);
            rec(n, hmax, budget / h, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, hmax, cmax, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn offset_vectors(p: u64, sides: &[u64]) -> Vec<Vec<u64>> {
    let choices: Vec<Vec<u64>> = sides
        .iter()
        .map(|&h| {
            let top = p - 1 - h;
            if sides.len() == 1 {
                (0..=top).collect()
            } else {
                [0, 1.min(top), top / 2, top].into_iter().collect::<BTreeSet<_>>().into_iter().collect()
            }
        })
        .collect();
    let mut out = vec![Vec::new()];
    for c in &choices {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                c.iter().map(move |&x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

fn random_multiset(field: &FieldSpec, chi: &MultChar, gen: &WeilGen, rng: &mut ChaCha8Rng) -> RootMultiset {
    let q = field.q();
    let d = chi.order();
    let mmax = (gen.max_roots as u64).min(q) as usize;
    loop {
        let m = rng.random_range(1..=mmax);
        let mut encs = BTreeSet::new();
        while encs.len() < m {
            encs.insert(rng.random_range(0..q));
        }
        let roots: Vec<(FieldElement, u64)> = encs
            .into_iter()
            .map(|e| (field.from_encoding(e).expect("encoding below q"), rng.random_range(1..=gen.max_multiplicity)))
            .collect();
        let f = RootMultiset::new(field, roots).expect("distinct roots with positive multiplicities");
        // Trivial χ makes every f a first power; keep it and let the row be NA.
        if d == 1 || !f.is_dth_power(d) {
            return f;
        }
    }
}

fn ps_elements(field: &FieldSpec, sel: &Selection, rng: &mut ChaCha8Rng) -> Result<Vec<FieldElement>, VerifyError> {
    let q = field.q();
    let generating = |e: u64| {
        let g = field.from_encoding(e).expect("encoding below q");
        field.is_generating(&g).expect("same field").then_some(g)
    };
    Ok(match sel {
        Selection::Keyword(_) => (0..q).filter_map(generating).collect(),
        Selection::List(v) => {
            let mut out = Vec::new();
            for &e in v.iter().collect::<BTreeSet<_>>() {
                if e >= q {
                    return Err(VerifyError::ConfigInvalid(format!("ps element {e} is not below q = {q}")));
                }
                out.push(field.from_encoding(e).expect("checked"));
            }
            out
        }
        Selection::Random { random } => {
            // Proper subfields hold at most q/2 elements, so rejection ends
            // quickly and q/2 picks always exist.
            let mut picked = BTreeSet::new();
            let available = if field.n() == 1 { q } else { q / 2 };
            let k = (*random as u64).min(available);
            while (picked.len() as u64) < k {
                let e = rng.random_range(0..q);
                if generating(e).is_some() {
                    picked.insert(e);
                }
            }
            picked.into_iter().map(|e| field.from_encoding(e).expect("below q")).collect()
        }
    })
}

fn plan_field(cfg: &SweepConfig, checks: &[Theorem], p: u64, n: usize, seed: u64) -> Result<FieldRun, VerifyError> {
    let field = build_field(p, n, seed)?;
    let q = field.q();
    let base = cfg.seed ^ p.rotate_left(32) ^ (n as u64).rotate_left(16) ^ seed.rotate_left(48);
    let mut chars = cfg.characters.pick(1, q - 1, &mut stream(base, 1));
    for e in chars.iter_mut() {
        *e %= q - 1;
    }
    chars.sort_unstable();
    chars.dedup();
    let twists = cfg.twists.pick(0, q, &mut stream(base, 2));
    if let Some(t) = twists.iter().find(|&&t| t >= q) {
        return Err(VerifyError::ConfigInvalid(format!("twist {t} is not below q = {q}")));
    }

    let wants = |set: &[Theorem]| set.iter().any(|t| checks.contains(t));
    let need_boxes = wants(&MIXED_CHECKS) || wants(&PURE_CHECKS) || wants(&ENERGY_CHECKS);
    let boxes = if need_boxes { generate_boxes(&field, &cfg.boxes, &mut stream(base, 3))? } else { Vec::new() };

    let mut cases = Vec::new();
    if wants(&ENERGY_CHECKS) {
        cases.extend((0..boxes.len()).map(|bx| Case::Energy { bx }));
    }
    if wants(&MIXED_CHECKS) || wants(&PURE_CHECKS) {
        for bx in 0..boxes.len() {
            for &chi in &chars {
                if wants(&PURE_CHECKS) {
                    cases.push(Case::Sum { chi, a: 0, bx, pure: true });
                }
                if wants(&MIXED_CHECKS) {
                    cases.extend(twists.iter().map(|&a| Case::Sum { chi, a, bx, pure: false }));
                }
            }
        }
    }
    if checks.contains(&Theorem::Weil) {
        let mut rng = stream(base, 4);
        for &e in &chars {
            let chi = MultChar::new(&field, e as i64);
            for _ in 0..cfg.weil.count {
                cases.push(Case::Weil { chi: e, f: random_multiset(&field, &chi, &cfg.weil, &mut rng) });
            }
        }
    }
    if checks.contains(&Theorem::Ps) {
        let gs = ps_elements(&field, &cfg.ps_elements, &mut stream(base, 5))?;
        for &chi in &chars {
            for g in &gs {
                cases.extend((0..p).map(|a| Case::Ps { chi, g: g.clone(), a }));
            }
        }
    }
    Ok(FieldRun { field, seed, boxes, cases })
}

fn coeff_list(c: &[u64]) -> String {
    c.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn repro(run: &FieldRun, case: &Case, row: &BoundReport, opts: &CheckOptions) -> String {
    let f = &run.field;
    let head = format!("--p {} --n {} --modulus-seed {}", f.p(), f.n(), run.seed);
    match case {
        Case::Energy { bx } => {
            let check = if row.theorem == Theorem::ChangEnergy { "chang" } else { "konyagin" };
            format!("charsum energy {head} --box \"{}\" --check {check}", run.boxes[*bx])
        }
        Case::Sum { chi, a, bx, .. } => format!(
            "charsum verify {head} --chi-exp {chi} --a \"{}\" --box \"{}\" --check {} --r {} --eps {} --delta {}{}",
            coeff_list(&f.decode_raw(*a)),
            run.boxes[*bx],
            row.theorem,
            opts.r,
            opts.eps,
            opts.delta,
            opts.tau.map(|t| format!(" --tau {t}")).unwrap_or_default(),
        ),
        Case::Weil { chi, f: roots } => {
            format!("charsum weil {head} --chi-exp {chi} --roots \"{}\"", roots.display(f))
        }
        Case::Ps { chi, g, a } => {
            format!("charsum ps {head} --chi-exp {chi} --g \"{}\" --a {a}", coeff_list(g.coeffs()))
        }
    }
}

fn evaluate(run: &FieldRun, case: &Case, checks: &[Theorem], opts: &CheckOptions) -> Result<Vec<BoundReport>, VerifyError> {
    let f = &run.field;
    // Cases already run in parallel; inner sums stay on the worker.
    let inner = Execution::Sequential;
    match case {
        Case::Energy { bx } => Ok(energy_rows(inner, f, &run.boxes[*bx], checks)),
        Case::Sum { chi, a, bx, pure } => {
            let chi = MultChar::new(f, *chi as i64);
            let a = AddCharParam::new(f, f.from_encoding(*a)?)?;
            let bx = &run.boxes[*bx];
            let s = partial_gauss_sum_with(inner, f, &chi, &a, bx);
            if *pure {
                pure_rows(f, &chi, bx, &s, checks, opts)
            } else {
                mixed_rows(f, &chi, &a, bx, &s, checks, opts)
            }
        }
        Case::Weil { chi, f: roots } => Ok(vec![weil_report(f, &MultChar::new(f, *chi as i64), roots)]),
        Case::Ps { chi, g, a } => Ok(vec![ps_report(f, &MultChar::new(f, *chi as i64), g, *a)]),
    }
}

/// Runs every check in the config and returns rows in generation order.
///
/// Fields are taken in config order (prime, degree, modulus seed); within a
/// field rows follow boxes, then characters, then twists. Output depends only
/// on the config.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<BoundReport>, VerifyError> {
    run_sweep_with(Execution::default(), cfg)
}

pub fn run_sweep_with(exec: Execution, cfg: &SweepConfig) -> Result<Vec<BoundReport>, VerifyError> {
    cfg.validate()?;
    let checks = cfg.parsed_checks()?;
    let opts = cfg.options();
    let mut rows = Vec::new();
    if checks.is_empty() {
        return Ok(rows);
    }
    for &p in &cfg.primes {
        for &n in &cfg.degrees {
            for &seed in &cfg.modulus_seeds {
                let run = plan_field(cfg, &checks, p, n, seed)?;
                let results = map_indexed(exec, run.cases.len(), |i| evaluate(&run, &run.cases[i], &checks, &opts));
                for (case, res) in run.cases.iter().zip(results) {
                    for row in res? {
                        if row.failed() {
                            let repro = repro(&run, case, &row, &opts);
                            return Err(VerifyError::AssertionFailed { row: Box::new(row), repro });
                        }
                        rows.push(row);
                    }
                }
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::{emit_to_string, Holds};

    #[test]
    fn empty_checks_give_empty_table() {
        let cfg = SweepConfig::from_json(r#"{"primes": [7, 11]}"#).unwrap();
        assert!(run_sweep(&cfg).unwrap().is_empty());
        let csv = emit_to_string(&[], OutputFormat::Csv);
        assert_eq!(csv.lines().count(), 1);
    }

    #[test]
    fn small_sweep_holds() {
        let cfg = SweepConfig::from_json(
            r#"{"primes": [7, 11], "degrees": [1], "checks": ["pv", "weil"],
                "boxes": [{"exhaustive": {}}], "twists": "all", "weil": {"count": 5}}"#,
        )
        .unwrap();
        let rows = run_sweep(&cfg).unwrap();
        // pv: boxes p(p−1)/2, characters p−2, twists p.
        let expected_pv = 21 * 5 * 7 + 55 * 9 * 11;
        assert_eq!(rows.iter().filter(|r| r.theorem == Theorem::Pv).count(), expected_pv);
        assert_eq!(rows.iter().filter(|r| r.theorem == Theorem::Weil).count(), (5 + 9) * 5);
        assert!(rows.iter().all(|r| r.holds == Holds::True));
    }

    #[test]
    fn sweeps_are_reproducible() {
        let text = r#"{"primes": [13], "degrees": [1, 2], "checks": ["pv", "triangle", "ps", "thm7", "chang_energy", "weil"],
                       "characters": {"random": 5}, "twists": {"random": 3}, "seed": 9,
                       "boxes": [{"random": {"count": 3}}, {"side_power": {"exponent": 0.5, "count": 2}}]}"#;
        let cfg = SweepConfig::from_json(text).unwrap();
        let a = emit_to_string(&run_sweep_with(Execution::Parallel, &cfg).unwrap(), OutputFormat::Csv);
        let b = emit_to_string(&run_sweep_with(Execution::Sequential, &cfg).unwrap(), OutputFormat::Csv);
        assert_eq!(a, b);
        assert!(a.lines().count() > 50);
    }

    #[test]
    fn invalid_configs() {
        for text in [
            r#"{"primes": [9], "checks": ["pv"]}"#,
            r#"{"checks": ["nope"]}"#,
            r#"{"characters": "some"}"#,
            r#"{"eps": 0.5, "checks": ["thm7"]}"#,
            r#"{"r": 1, "checks": ["burgess3"]}"#,
            r#"{"format": "xml"}"#,
            r#"{"unknown_key": 1}"#,
            r#"{"primes": [7], "checks": ["pv"], "boxes": [{"explicit": {"spec": "5:3"}}]}"#,
        ] {
            let res = SweepConfig::from_json(text).and_then(|c| run_sweep(&c));
            assert!(matches!(res, Err(VerifyError::ConfigInvalid(_))), "{text}: {res:?}");
        }
    }

    #[test]
    fn side_and_offset_enumeration() {
        assert_eq!(side_vectors(2, 3, 4), vec![vec![1, 1], vec![1, 2], vec![1, 3], vec![2, 1], vec![2, 2], vec![3, 1]]);
        assert_eq!(offset_vectors(7, &[3]), vec![vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(offset_vectors(7, &[5, 5]).len(), 4);
        let boxes = generate_boxes(&build_field(7, 1, 0).unwrap(), &[BoxGen::Exhaustive { max_side: None, max_card: None }], &mut stream(0, 0)).unwrap();
        assert_eq!(boxes.len(), 21);
    }

    #[test]
    fn trivial_character_is_not_applicable() {
        let cfg = SweepConfig::from_json(
            r#"{"primes": [7], "checks": ["pv"], "characters": [0], "boxes": [{"explicit": {"spec": "0:6"}}]}"#,
        )
        .unwrap();
        let rows = run_sweep(&cfg).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].holds, Holds::NotApplicable);
    }

    #[test]
    fn repro_lines() {
        let cfg = SweepConfig::from_json(r#"{"primes": [5], "degrees": [2], "checks": ["pv", "ps"]}"#).unwrap();
        let checks = cfg.parsed_checks().unwrap();
        let run = plan_field(&cfg, &checks, 5, 2, 0).unwrap();
        let opts = cfg.options();
        let row = evaluate(&run, &run.cases[0], &checks, &opts).unwrap().remove(0);
        let line = repro(&run, &run.cases[0], &row, &opts);
        assert!(line.starts_with("charsum verify --p 5 --n 2 --modulus-seed 0 --chi-exp 1 --a \"0,0\" --box "), "{line}");
        let last = run.cases.last().unwrap();
        let row = evaluate(&run, last, &checks, &opts).unwrap().remove(0);
        assert!(repro(&run, last, &row, &opts).starts_with("charsum ps --p 5 --n 2"));
    }
}
