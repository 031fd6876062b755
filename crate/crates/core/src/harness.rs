//! Exhaustive identity checks and conjecture sweeps over small Weyl groups.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::csm::{parabolic_pushforward, Csm};
use crate::error::{Error, Result};
use crate::fk::{psi, Fk, Mode};
use crate::nilhecke::element_json;
use crate::poly::{Poly, Rational};
use crate::rootpoly::specialize_zero;
use crate::weyl::{WeylElem, WeylGroup};
use crate::wordalg::WordAlgebra;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest group swept without `force` (the order of `S_6`).
pub const MAX_UNFORCED_ORDER: usize = 720;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    Main,
    Lr,
    Ct,
    Top,
    Fwvu,
    Pushforward,
    Redword,
}

impl Identity {
    pub const ALL: [Identity; 7] = [
        Identity::Main,
        Identity::Lr,
        Identity::Ct,
        Identity::Top,
        Identity::Fwvu,
        Identity::Pushforward,
        Identity::Redword,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Main => "main",
            Identity::Lr => "lr",
            Identity::Ct => "ct",
            Identity::Top => "top",
            Identity::Fwvu => "fwvu",
            Identity::Pushforward => "pushforward",
            Identity::Redword => "redword",
        }
    }

    pub fn needs_type_a(self) -> bool {
        matches!(self, Identity::Main | Identity::Lr | Identity::Fwvu)
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown identity `{s}`")))
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conjecture {
    CsmPositivity,
    Refined,
    FNonneg,
    EquivariantPositivity,
}

impl Conjecture {
    pub const ALL: [Conjecture; 4] = [
        Conjecture::CsmPositivity,
        Conjecture::Refined,
        Conjecture::FNonneg,
        Conjecture::EquivariantPositivity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Conjecture::CsmPositivity => "csm-positivity",
            Conjecture::Refined => "refined",
            Conjecture::FNonneg => "f-nonneg",
            Conjecture::EquivariantPositivity => "equivariant-positivity",
        }
    }

    pub fn needs_type_a(self) -> bool {
        matches!(self, Conjecture::FNonneg)
    }
}

impl FromStr for Conjecture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Conjecture::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown conjecture `{s}`")))
    }
}

impl fmt::Display for Conjecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, Default)]
pub struct SweepOptions {
    /// Allow groups larger than [`MAX_UNFORCED_ORDER`].
    pub force: bool,
    /// Check this many random `(w, v)` pairs instead of all of them (`ct` only).
    pub sample: Option<usize>,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepReport {
    pub identity: String,
    pub scope: Value,
    pub checked: u64,
    pub violations: Vec<Value>,
    pub elapsed_ms: u64,
    pub version: String,
    pub status: String,
    pub table: Option<Vec<Value>>,
    /// Identity sweeps fail on a violation; conjecture sweeps only report.
    pub is_conjecture: bool,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "identity": self.identity,
            "scope": self.scope,
            "checked": self.checked,
            "violations": self.violations,
            "elapsed_ms": self.elapsed_ms,
            "version": self.version,
            "status": self.status,
        });
        if let Some(t) = &self.table {
            v["table"] = Value::Array(t.clone());
        }
        v
    }
}

/// Refuses groups above [`MAX_UNFORCED_ORDER`] unless forced.
pub fn check_order(order: u128, force: bool) -> Result<()> {
    if !force && order > MAX_UNFORCED_ORDER as u128 {
        return Err(Error::ScopeTooLarge(format!(
            "group of order {order} exceeds {MAX_UNFORCED_ORDER}; pass force to override"
        )));
    }
    Ok(())
}

/// `n!`, for guarding `S_n` before it is enumerated.
pub fn symmetric_order(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub fn scope_json(group: &WeylGroup, opts: &SweepOptions) -> Value {
    let mut v = json!({
        "type": group.cartan().label().unwrap_or("custom"),
        "rank": group.rank(),
        "order": group.len(),
    });
    if group.is_type_a() {
        v["n"] = json!(group.rank() + 1);
    }
    if let Some(s) = opts.sample {
        v["sample"] = json!(s);
        v["seed"] = json!(opts.seed);
    }
    v
}

struct Tally {
    checked: u64,
    violations: Vec<Value>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checked: 0,
            violations: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> Value) {
        self.checked += 1;
        if !ok {
            self.violations.push(detail());
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.violations.extend(other.violations);
        self
    }
}

fn par_rows<T: Send>(elements: &[WeylElem], f: impl Fn(WeylElem) -> T + Sync + Send) -> Vec<T> {
    elements.par_iter().map(|&w| f(w)).collect()
}

fn sum_tallies(rows: Vec<Tally>) -> Tally {
    rows.into_iter().fold(Tally::new(), Tally::merge)
}

fn rat(c: &Rational) -> Value {
    json!(c.to_string())
}

fn poly(p: &Poly) -> Value {
    json!(p.to_text("a"))
}

/// Runs one identity sweep.
pub fn verify(group: &WeylGroup, identity: Identity, opts: &SweepOptions) -> Result<SweepReport> {
    check_order(group.len() as u128, opts.force)?;
    if identity.needs_type_a() && !group.is_type_a() {
        return Err(Error::NotTypeA);
    }
    let start = Instant::now();
    let els: Vec<WeylElem> = group.elements().collect();
    let e = |w: WeylElem| element_json(group, w);
    let tally = match identity {
        Identity::Main => {
            let csm = Csm::new(group);
            let fk = Fk::new(group)?;
            sum_tallies(par_rows(&els, |w| {
                let mut t = Tally::new();
                for &v in &els {
                    let c = csm.csm_coeff(w, v);
                    let fk_side = psi(&fk.schubert_act(w, v, Mode::Extended));
                    t.check(c == Rational::from_integer(fk_side.into()), || {
                        json!({"w": e(w), "v": e(v), "csm": rat(&c), "psi": fk_side})
                    });
                }
                t
            }))
        }
        Identity::Lr => lr_sweep(group, &els)?,
        Identity::Ct => {
            let csm = Csm::new(group);
            let pairs = sampled_pairs(&els, opts);
            let rows: Vec<Tally> = pairs
                .par_iter()
                .map(|&(w, v)| {
                    let mut t = Tally::new();
                    let agg = csm.csm_via_aggregation(w, v);
                    let ct = csm.ct_coeff(w, v);
                    t.check(agg == ct, || {
                        json!({"w": e(w), "v": e(v), "aggregate": poly(&agg), "c_T": poly(&ct)})
                    });
                    t
                })
                .collect();
            sum_tallies(rows)
        }
        Identity::Top => {
            let csm = Csm::new(group);
            sum_tallies(par_rows(&els, |w| {
                let mut t = Tally::new();
                for &v in &els {
                    let top = csm.top_degree(w, v);
                    let loc = csm.localization(w, v);
                    t.check(top == loc, || {
                        json!({"w": e(w), "v": e(v), "top": poly(&top), "localization": poly(&loc)})
                    });
                }
                t
            }))
        }
        Identity::Fwvu => {
            let csm = Csm::new(group);
            let fk = Fk::new(group)?;
            sum_tallies(par_rows(&els, |w| {
                let mut t = Tally::new();
                for &v in &els {
                    let agg = csm.f_row_via_aggregation(w, v);
                    let act = fk.schubert_act(w, v, Mode::Extended);
                    for &u in &els {
                        let a = agg.get(&u).cloned().unwrap_or_else(Rational::zero);
                        let f = act.coeff(u);
                        t.check(a == Rational::from_integer(f.into()), || {
                            json!({"w": e(w), "v": e(v), "u": e(u), "aggregate": rat(&a), "f": f})
                        });
                    }
                }
                t
            }))
        }
        Identity::Pushforward => {
            let csm = Csm::new(group);
            let mut t = Tally::new();
            for k in 1..=group.rank() {
                let subset: Vec<usize> = (1..=group.rank()).filter(|&j| j != k).collect();
                let mut by_coset: BTreeMap<WeylElem, Vec<WeylElem>> = BTreeMap::new();
                for &w in &els {
                    by_coset.entry(group.min_coset_rep(w, &subset)?).or_default().push(w);
                }
                for (rep, members) in by_coset {
                    let expected = parabolic_pushforward(group, csm.csm_cell(rep), &subset)?;
                    for w in members {
                        let got = parabolic_pushforward(group, csm.csm_cell(w), &subset)?;
                        t.check(got == expected, || {
                            json!({
                                "parabolic": subset,
                                "w": e(w),
                                "representative": e(rep),
                                "pushed": got.to_json(group),
                                "expected": expected.to_json(group),
                            })
                        });
                    }
                }
            }
            t
        }
        Identity::Redword => {
            let csm = Csm::new(group);
            sum_tallies(par_rows(&els, |w| {
                let mut t = Tally::new();
                let nh = csm.nilhecke();
                let ct = csm.csm_cell_equivariant(w);
                let cell = csm.csm_cell(w);
                for &v in &els {
                    let specialized = specialize_zero(&ct.coeff(v));
                    let c = cell.coeff(v);
                    t.check(specialized == c, || {
                        json!({"w": e(w), "v": e(v), "specialized": rat(&specialized), "csm": rat(&c)})
                    });
                }
                for word in group.reduced_words(w).iter() {
                    let along = csm.csm_equivariant_along(word).expect("valid word");
                    t.check(&along == ct, || json!({"w": e(w), "word": word.0, "product": "c_T"}));
                    let expansion = nh.weyl_along(word).expect("valid word");
                    t.check(&expansion == csm.weyl_expansion(w), || {
                        json!({"w": e(w), "word": word.0, "product": "weyl"})
                    });
                    let delta = nh.coproduct_along(word).expect("valid word");
                    t.check(&delta == nh.coproduct(w).as_ref(), || {
                        json!({"w": e(w), "word": word.0, "product": "coproduct"})
                    });
                }
                t
            }))
        }
    };
    Ok(finish(identity.name(), group, opts, tally, None, start, false))
}

fn sampled_pairs(els: &[WeylElem], opts: &SweepOptions) -> Vec<(WeylElem, WeylElem)> {
    let mut pairs: Vec<(WeylElem, WeylElem)> =
        els.iter().flat_map(|&w| els.iter().map(move |&v| (w, v))).collect();
    if let Some(n) = opts.sample {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        pairs.shuffle(&mut rng);
        pairs.truncate(n);
        pairs.sort();
    }
    pairs
}

/// FK Bruhat constants, nil-Hecke coproduct constants and word-level aggregates at `l(w) = l(u) + l(v)`.
fn lr_sweep(group: &WeylGroup, els: &[WeylElem]) -> Result<Tally> {
    let csm = Csm::new(group);
    let nh = csm.nilhecke();
    let fk = Fk::new(group)?;
    let wa = WordAlgebra::new(group);
    let e = |w: WeylElem| element_json(group, w);
    let rows = par_rows(els, |w| {
        let mut t = Tally::new();
        let lw = group.length(w);
        let agg = wa.reduced_aggregates(group.canonical_word(w)).expect("valid word");
        let delta = nh.coproduct(w);
        let by_v: BTreeMap<WeylElem, _> = els
            .iter()
            .filter(|&&v| group.length(v) <= lw)
            .map(|&v| (v, fk.schubert_act(w, v, Mode::Bruhat)))
            .collect();
        for (&v, act_v) in &by_v {
            for (&u, act_u) in &by_v {
                if group.length(u) + group.length(v) != lw {
                    continue;
                }
                let p = delta.coeff(u, v);
                let word_side = agg.get(&(u, v)).cloned().unwrap_or_else(|| Poly::zero(group.rank()));
                // Coefficient of u in w . S_v, and the transposed reading v in w . S_u.
                let fk_uv = act_v.coeff(u);
                let fk_vu = act_u.coeff(v);
                let as_poly = |k: i64| Poly::constant(group.rank(), Rational::from_integer(k.into()));
                t.check(
                    p == as_poly(fk_uv) && p == as_poly(fk_vu) && p == word_side,
                    || {
                        json!({
                            "w": e(w), "u": e(u), "v": e(v),
                            "coproduct": poly(&p),
                            "fk_u_in_w_S_v": fk_uv,
                            "fk_v_in_w_S_u": fk_vu,
                            "word_aggregate": poly(&word_side),
                        })
                    },
                );
            }
        }
        t
    });
    Ok(sum_tallies(rows))
}

/// Runs one conjecture sweep. Counterexamples are reported, never raised.
pub fn conjecture(group: &WeylGroup, conj: Conjecture, opts: &SweepOptions) -> Result<SweepReport> {
    check_order(group.len() as u128, opts.force)?;
    if conj.needs_type_a() && !group.is_type_a() {
        return Err(Error::NotTypeA);
    }
    let start = Instant::now();
    let els: Vec<WeylElem> = group.elements().collect();
    let e = |w: WeylElem| element_json(group, w);
    let csm = Csm::new(group);
    let mut table = None;
    let tally = match conj {
        Conjecture::CsmPositivity => sum_tallies(par_rows(&els, |w| {
            let mut t = Tally::new();
            for &v in els.iter().filter(|&&v| group.bruhat_leq(v, w)) {
                let c = csm.csm_coeff(w, v);
                t.check(c.is_positive(), || {
                    json!({
                        "w": e(w), "v": e(v), "c": rat(&c),
                        "trace": {"csm_class": csm.csm_cell(w).to_json(group), "word": group.canonical_word(w).0},
                    })
                });
            }
            t
        })),
        Conjecture::Refined => {
            let nh = csm.nilhecke();
            sum_tallies(par_rows(&els, |w| {
                let mut t = Tally::new();
                let delta = nh.coproduct(w);
                let mut sums: BTreeMap<WeylElem, Rational> = BTreeMap::new();
                for ((u, v), p) in delta.terms() {
                    if group.length(u) + group.length(v) == group.length(w) {
                        *sums.entry(v).or_insert_with(Rational::zero) += specialize_zero(p);
                    }
                }
                for &v in &els {
                    let c = csm.csm_coeff(w, v);
                    let s = sums.get(&v).cloned().unwrap_or_else(Rational::zero);
                    t.check(c >= s, || {
                        let terms: Vec<Value> = delta
                            .terms()
                            .filter(|((u, vv), _)| *vv == v && group.length(*u) + group.length(v) == group.length(w))
                            .map(|((u, _), p)| json!({"u": e(u), "p": poly(p)}))
                            .collect();
                        json!({
                            "w": e(w), "v": e(v), "c": rat(&c), "sum_p": rat(&s),
                            "trace": {"csm_class": csm.csm_cell(w).to_json(group), "lr_terms": terms},
                        })
                    });
                }
                t
            }))
        }
        Conjecture::FNonneg => {
            let fk = Fk::new(group)?;
            let rows = par_rows(&els, |w| {
                let mut t = Tally::new();
                let mut entries = Vec::new();
                for &v in &els {
                    let act = fk.schubert_act(w, v, Mode::Extended);
                    for &u in &els {
                        let f = act.coeff(u);
                        if f != 0 {
                            entries.push(json!({"w": e(w), "v": e(v), "u": e(u), "f": f}));
                        }
                        t.check(f >= 0, || {
                            json!({"w": e(w), "v": e(v), "u": e(u), "f": f, "trace": {"action": act.to_json(group)}})
                        });
                    }
                }
                (t, entries)
            });
            let mut all = Vec::new();
            let mut tally = Tally::new();
            for (t, entries) in rows {
                tally = tally.merge(t);
                all.extend(entries);
            }
            table = Some(all);
            tally
        }
        Conjecture::EquivariantPositivity => sum_tallies(par_rows(&els, |w| {
            let mut t = Tally::new();
            let ct = csm.csm_cell_equivariant(w);
            for &v in &els {
                let c = ct.coeff(v);
                t.check(c.is_nonnegative() && c.is_integral(), || {
                    json!({"w": e(w), "v": e(v), "c_T": poly(&c), "trace": {"class": ct.to_json(group)}})
                });
            }
            t
        })),
    };
    Ok(finish(conj.name(), group, opts, tally, table, start, true))
}

fn finish(
    name: &str,
    group: &WeylGroup,
    opts: &SweepOptions,
    tally: Tally,
    table: Option<Vec<Value>>,
    start: Instant,
    is_conjecture: bool,
) -> SweepReport {
    let ok = tally.violations.is_empty();
    let status = match (is_conjecture, ok) {
        (false, true) => "pass",
        (false, false) => "fail",
        (true, true) => "holds",
        (true, false) => "counterexample",
    };
    SweepReport {
        identity: name.to_string(),
        scope: scope_json(group, opts),
        checked: tally.checked,
        violations: tally.violations,
        elapsed_ms: start.elapsed().as_millis() as u64,
        version: VERSION.to_string(),
        status: status.to_string(),
        table,
        is_conjecture,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanData;

    #[test]
    fn names_round_trip() {
        for i in Identity::ALL {
            assert_eq!(i.name().parse::<Identity>().unwrap(), i);
        }
        for c in Conjecture::ALL {
            assert_eq!(c.name().parse::<Conjecture>().unwrap(), c);
        }
        assert!("nope".parse::<Identity>().is_err());
    }

    #[test]
    fn scope_guard() {
        assert!(check_order(symmetric_order(6), false).is_ok());
        assert!(matches!(check_order(symmetric_order(9), false), Err(Error::ScopeTooLarge(_))));
        assert!(check_order(symmetric_order(9), true).is_ok());
    }

    #[test]
    fn every_identity_holds_on_s3() {
        let g = WeylGroup::symmetric(3).unwrap();
        for i in Identity::ALL {
            let r = verify(&g, i, &SweepOptions::default()).unwrap();
            assert!(r.passed(), "{i}: {:?}", r.violations);
            assert_eq!(r.status, "pass");
            assert!(r.checked > 0);
        }
    }

    #[test]
    fn type_a_only_identities_reject_b2() {
        let g = WeylGroup::new(CartanData::from_label("B2").unwrap()).unwrap();
        assert!(matches!(verify(&g, Identity::Main, &SweepOptions::default()), Err(Error::NotTypeA)));
        assert!(verify(&g, Identity::Top, &SweepOptions::default()).unwrap().passed());
    }

    #[test]
    fn conjectures_hold_on_s3() {
        let g = WeylGroup::symmetric(3).unwrap();
        for c in Conjecture::ALL {
            let r = conjecture(&g, c, &SweepOptions::default()).unwrap();
            assert_eq!(r.status, "holds", "{c}");
        }
        let r = conjecture(&g, Conjecture::CsmPositivity, &SweepOptions::default()).unwrap();
        // Bruhat intervals in S3: 1 + 2*2 + 2*4 + 6 = 19 comparable pairs.
        assert_eq!(r.checked, 19);
    }

    #[test]
    fn sampling_is_seeded() {
        let g = WeylGroup::symmetric(3).unwrap();
        let opts = SweepOptions { sample: Some(10), seed: 7, ..Default::default() };
        let els: Vec<WeylElem> = g.elements().collect();
        assert_eq!(sampled_pairs(&els, &opts), sampled_pairs(&els, &opts));
        assert_eq!(sampled_pairs(&els, &opts).len(), 10);
        let r = verify(&g, Identity::Ct, &opts).unwrap();
        assert_eq!(r.checked, 10);
    }
}
