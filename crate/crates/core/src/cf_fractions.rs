//! Right calculus of fractions on a finite category.
//!
//! Checks the four axioms (CF1 identities, CF2 closure, CF3 right Ore, CF4
//! right cancellability), builds the category of fractions whose morphisms are
//! equivalence classes of spans `(A′, w, f)` with `w ∈ W`, and decides the two
//! finite conditions (d)/(e) that characterize strong fiber products in the
//! localization.

use std::collections::HashMap;

use crate::fincat::{
    compose, is_pullback_cone, FinCategory, MorClass, MorData, MorId, ObjId,
};
use crate::{Error, Result};

/// A span `(A′, w, f)`: a morphism `src(w) ⟶ tgt(f)` of the localization read
/// "f after formally inverted w".
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Span {
    pub apex: ObjId,
    pub leg_w: MorId,
    pub leg_f: MorId,
}

impl Span {
    /// Source of the localized morphism this span represents.
    pub fn source(&self, c: &FinCategory) -> ObjId {
        c.tgt(self.leg_w)
    }
    /// Target of the localized morphism this span represents.
    pub fn target(&self, c: &FinCategory) -> ObjId {
        c.tgt(self.leg_f)
    }
}

/// Per-axiom outcome: pass, or the first (lexicographic) failing witness.
#[derive(Clone, Debug)]
pub struct AxiomCheck {
    pub pass: bool,
    /// For failures: the universally-quantified instance with no completion.
    pub witness: Option<Vec<MorId>>,
}

impl AxiomCheck {
    fn pass() -> Self {
        AxiomCheck {
            pass: true,
            witness: None,
        }
    }
    fn fail(witness: Vec<MorId>) -> Self {
        AxiomCheck {
            pass: false,
            witness: Some(witness),
        }
    }
}

/// Outcome of [`check_cf_axioms`].
#[derive(Clone, Debug)]
pub struct CfReport {
    pub cf1: AxiomCheck,
    pub cf2: AxiomCheck,
    pub cf3: AxiomCheck,
    pub cf4: AxiomCheck,
}

impl CfReport {
    pub fn all_pass(&self) -> bool {
        self.cf1.pass && self.cf2.pass && self.cf3.pass && self.cf4.pass
    }
}

/// Decide the four axioms of a right calculus of fractions for `(c, w)`.
pub fn check_cf_axioms(c: &FinCategory, w: &MorClass) -> Result<CfReport> {
    w.check_parent(c)?;
    // CF1: all identities belong to W.
    let mut cf1 = AxiomCheck::pass();
    for a in c.objects() {
        if !w.contains(c.id(a)) {
            cf1 = AxiomCheck::fail(vec![c.id(a)]);
            break;
        }
    }
    // CF2: W closed under composition.
    let mut cf2 = AxiomCheck::pass();
    'cf2: for w2 in w.members() {
        for w1 in w.members() {
            if c.tgt(w1) != c.src(w2) {
                continue;
            }
            if !w.contains(compose(c, w2, w1)?) {
                cf2 = AxiomCheck::fail(vec![w2, w1]);
                break 'cf2;
            }
        }
    }
    // CF3 (right Ore): for w0 ∈ W: A→B and f: C→B there are (D, w′ ∈ W, f′)
    // with f∘w′ = w0∘f′.
    let mut cf3 = AxiomCheck::pass();
    'cf3: for w0 in w.members() {
        for f in c.mor_ids() {
            if c.tgt(f) != c.tgt(w0) {
                continue;
            }
            if cf3_witness(c, w, w0, f).is_none() {
                cf3 = AxiomCheck::fail(vec![w0, f]);
                break 'cf3;
            }
        }
    }
    // CF4 (right cancellability): w0∘f1 = w0∘f2 implies f1∘v = f2∘v for some v ∈ W.
    let mut cf4 = AxiomCheck::pass();
    'cf4: for w0 in w.members() {
        for f1 in c.mor_ids() {
            if c.tgt(f1) != c.src(w0) {
                continue;
            }
            for f2 in c.mor_ids() {
                if c.tgt(f2) != c.src(w0) || c.src(f2) != c.src(f1) {
                    continue;
                }
                if compose(c, w0, f1)? != compose(c, w0, f2)? {
                    continue;
                }
                let found = w.members().any(|v| {
                    c.tgt(v) == c.src(f1)
                        && compose(c, f1, v).unwrap() == compose(c, f2, v).unwrap()
                });
                if !found {
                    cf4 = AxiomCheck::fail(vec![w0, f1, f2]);
                    break 'cf4;
                }
            }
        }
    }
    Ok(CfReport { cf1, cf2, cf3, cf4 })
}

/// Lexicographically least CF3 completion `(D, w′ ∈ W, f′)` of the cospan
/// `(w0 ∈ W, f)`, i.e. with `f∘w′ = w0∘f′`.
pub fn cf3_witness(
    c: &FinCategory,
    w: &MorClass,
    w0: MorId,
    f: MorId,
) -> Option<(ObjId, MorId, MorId)> {
    for d in c.objects() {
        for wp in c.hom(d, c.src(f)) {
            if !w.contains(wp) {
                continue;
            }
            for fp in c.hom(d, c.src(w0)) {
                if compose(c, f, wp).unwrap() == compose(c, w0, fp).unwrap() {
                    return Some((d, wp, fp));
                }
            }
        }
    }
    None
}

fn require_cf(c: &FinCategory, w: &MorClass) -> Result<()> {
    let report = check_cf_axioms(c, w)?;
    if !report.all_pass() {
        return Err(Error::CfViolation(format!(
            "CF axioms fail on `{}`: cf1={} cf2={} cf3={} cf4={}",
            c.name, report.cf1.pass, report.cf2.pass, report.cf3.pass, report.cf4.pass
        )));
    }
    Ok(())
}

/// All spans `a → b`, in canonical (apex, w, f) order.
pub fn enumerate_spans(c: &FinCategory, w: &MorClass, a: ObjId, b: ObjId) -> Result<Vec<Span>> {
    require_cf(c, w)?;
    Ok(enumerate_spans_unchecked(c, w, a, b))
}

fn enumerate_spans_unchecked(c: &FinCategory, w: &MorClass, a: ObjId, b: ObjId) -> Vec<Span> {
    let mut out = Vec::new();
    for apex in c.objects() {
        for leg_w in c.hom(apex, a) {
            if !w.contains(leg_w) {
                continue;
            }
            for leg_f in c.hom(apex, b) {
                out.push(Span { apex, leg_w, leg_f });
            }
        }
    }
    out
}

/// Are two parallel spans equivalent?  True iff a witness `(A³, v¹, v²)`
/// exists with `w¹∘v¹ ∈ W`, `w¹∘v¹ = w²∘v²`, `f¹∘v¹ = f²∘v²`.
pub fn spans_equivalent(c: &FinCategory, w: &MorClass, s1: &Span, s2: &Span) -> Result<bool> {
    w.check_parent(c)?;
    if s1.source(c) != s2.source(c) || s1.target(c) != s2.target(c) {
        return Err(Error::Precondition(
            "spans do not share source and target".into(),
        ));
    }
    Ok(spans_related(c, w, s1, s2))
}

/// The raw witness relation (not forced to be transitive here; the
/// localization takes the transitive closure explicitly).
fn spans_related(c: &FinCategory, w: &MorClass, s1: &Span, s2: &Span) -> bool {
    for a3 in c.objects() {
        for v1 in c.hom(a3, s1.apex) {
            let wv1 = compose(c, s1.leg_w, v1).unwrap();
            if !w.contains(wv1) {
                continue;
            }
            for v2 in c.hom(a3, s2.apex) {
                if compose(c, s2.leg_w, v2).unwrap() == wv1
                    && compose(c, s1.leg_f, v1).unwrap() == compose(c, s2.leg_f, v2).unwrap()
                {
                    return true;
                }
            }
        }
    }
    false
}

/// The category of fractions together with its class bookkeeping.
#[derive(Clone, Debug)]
pub struct FractionCategory {
    /// The localization as a plain category.  Objects coincide with the
    /// original objects (same ordinals and names).
    pub base: FinCategory,
    /// Full equivalence class of spans for each localized morphism.
    pub class_of: Vec<Vec<Span>>,
    span_class: HashMap<Span, MorId>,
}

impl FractionCategory {
    /// The localized morphism represented by `s`.
    pub fn class_of_span(&self, s: &Span) -> Option<MorId> {
        self.span_class.get(s).copied()
    }

    /// The class of the morphism `f` of the original category, i.e. of the
    /// span `(src f, id, f)`.
    pub fn embed(&self, c: &FinCategory, f: MorId) -> MorId {
        self.class_of_span(&Span {
            apex: c.src(f),
            leg_w: c.id(c.src(f)),
            leg_f: f,
        })
        .expect("every identity-legged span is enumerated")
    }
}

/// Build the category of fractions `C[W⁻¹]`.
///
/// Classes are the witness relation closed transitively; composition picks the
/// canonical (least) representative of each class and the lexicographically
/// least CF3 witness, then classifies the composite span.  The result is
/// validated before being returned.
pub fn localize(c: &FinCategory, w: &MorClass) -> Result<FractionCategory> {
    require_cf(c, w)?;

    let mut class_of: Vec<Vec<Span>> = Vec::new();
    let mut span_class: HashMap<Span, MorId> = HashMap::new();
    let mut mors: Vec<MorData> = Vec::new();

    // Hom-set by hom-set, in (source, target) ordinal order.
    for a in c.objects() {
        for b in c.objects() {
            let spans = enumerate_spans_unchecked(c, w, a, b);
            if spans.is_empty() {
                continue;
            }
            // Union-find over the witness relation = explicit transitive closure.
            let mut parent: Vec<usize> = (0..spans.len()).collect();
            fn find(parent: &mut Vec<usize>, i: usize) -> usize {
                if parent[i] != i {
                    let r = find(parent, parent[i]);
                    parent[i] = r;
                }
                parent[i]
            }
            for i in 0..spans.len() {
                for j in (i + 1)..spans.len() {
                    if spans_related(c, w, &spans[i], &spans[j]) {
                        let ri = find(&mut parent, i);
                        let rj = find(&mut parent, j);
                        parent[ri.max(rj)] = ri.min(rj);
                    }
                }
            }
            // Group into classes keyed by least member index (deterministic order).
            let mut classes: Vec<Vec<Span>> = Vec::new();
            let mut root_to_class: HashMap<usize, usize> = HashMap::new();
            for i in 0..spans.len() {
                let r = find(&mut parent, i);
                let k = *root_to_class.entry(r).or_insert_with(|| {
                    classes.push(Vec::new());
                    classes.len() - 1
                });
                classes[k].push(spans[i]);
            }
            for members in classes {
                let id = MorId(mors.len() as u16);
                if mors.len() >= crate::fincat::MAX_MORPHISMS {
                    return Err(Error::SizeLimit(
                        "localization exceeds the morphism cap".into(),
                    ));
                }
                let rep = members[0];
                mors.push(MorData {
                    name: format!(
                        "[{},{},{}]",
                        c.object_name(rep.apex),
                        c.mor_name(rep.leg_w),
                        c.mor_name(rep.leg_f)
                    ),
                    src: a,
                    tgt: b,
                });
                for s in &members {
                    span_class.insert(*s, id);
                }
                class_of.push(members);
            }
        }
    }

    // Identities: the class of (A, id_A, id_A).
    let mut identity = Vec::new();
    for a in c.objects() {
        let s = Span {
            apex: a,
            leg_w: c.id(a),
            leg_f: c.id(a),
        };
        identity.push(*span_class.get(&s).expect("identity span enumerated"));
    }

    // Composition on canonical representatives.
    let mut comp_entries: HashMap<(MorId, MorId), MorId> = HashMap::new();
    for g in 0..mors.len() {
        for f in 0..mors.len() {
            if mors[f].tgt != mors[g].src {
                continue;
            }
            let sf = class_of[f][0];
            let sg = class_of[g][0];
            let composite = compose_spans(c, w, &sf, &sg)?;
            let h = *span_class.get(&composite).ok_or_else(|| {
                Error::Defect("composite span not found among enumerated spans".into())
            })?;
            comp_entries.insert((MorId(g as u16), MorId(f as u16)), h);
        }
    }

    let objects: Vec<String> = c.objects().map(|a| c.object_name(a).to_string()).collect();
    let base = FinCategory::from_parts(
        format!("{}[W⁻¹]", c.name),
        objects,
        mors,
        identity,
        &comp_entries,
    )?;
    let report = crate::fincat::validate_category(&base);
    if !report.ok() {
        return Err(Error::Defect(format!(
            "localization violates category laws: {:?}",
            report.violations
        )));
    }
    Ok(FractionCategory {
        base,
        class_of,
        span_class,
    })
}

/// Compose spans `sf: A→B` then `sg: B→C` via the least CF3 witness.
pub fn compose_spans(c: &FinCategory, w: &MorClass, sf: &Span, sg: &Span) -> Result<Span> {
    if sf.target(c) != sg.source(c) {
        return Err(Error::NonComposable("span targets/sources mismatch".into()));
    }
    let (_, wp, fp) = cf3_witness(c, w, sg.leg_w, sf.leg_f)
        .ok_or_else(|| Error::CfViolation("CF3 completion missing".into()))?;
    Ok(Span {
        apex: c.src(wp),
        leg_w: compose(c, sf.leg_w, wp)?,
        leg_f: compose(c, sg.leg_f, fp)?,
    })
}

fn check_candidate_pre(
    c: &FinCategory,
    f1: MorId,
    f2: MorId,
    cand: (ObjId, MorId, MorId),
) -> Result<()> {
    let (cc, p1, p2) = cand;
    if c.tgt(f1) != c.tgt(f2) {
        return Err(Error::Precondition("cospan targets differ".into()));
    }
    if c.src(p1) != cc
        || c.src(p2) != cc
        || c.tgt(p1) != c.src(f1)
        || c.tgt(p2) != c.src(f2)
        || compose(c, f1, p1)? != compose(c, f2, p2)?
    {
        return Err(Error::Precondition(
            "candidate cone equation f1∘p1 = f2∘p2 violated".into(),
        ));
    }
    Ok(())
}

/// Condition (d): every cone `(D, q1, q2)` over `(f1, f2)` admits `(E, v ∈ W,
/// q)` with `q_m∘v = p_m∘q`.
pub fn check_condition_d(
    c: &FinCategory,
    w: &MorClass,
    f1: MorId,
    f2: MorId,
    cand: (ObjId, MorId, MorId),
) -> Result<bool> {
    w.check_parent(c)?;
    check_candidate_pre(c, f1, f2, cand)?;
    let (cc, p1, p2) = cand;
    for d in c.objects() {
        for q1 in c.hom(d, c.src(f1)) {
            for q2 in c.hom(d, c.src(f2)) {
                if compose(c, f1, q1)? != compose(c, f2, q2)? {
                    continue;
                }
                if d_factorizations(c, w, (p1, p2), (d, q1, q2), cc)
                    .next()
                    .is_none()
                {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// All factorizations `(E, v ∈ W, q)` of the cone `(d, q1, q2)` through the
/// candidate legs, in lexicographic order.
fn d_factorizations<'a>(
    c: &'a FinCategory,
    w: &'a MorClass,
    legs: (MorId, MorId),
    cone: (ObjId, MorId, MorId),
    cc: ObjId,
) -> impl Iterator<Item = (ObjId, MorId, MorId)> + 'a {
    let (p1, p2) = legs;
    let (d, q1, q2) = cone;
    c.objects().flat_map(move |e| {
        c.hom(e, d).into_iter().flat_map(move |v| {
            c.hom(e, cc)
                .into_iter()
                .filter(move |&q| {
                    w.contains(v)
                        && compose(c, q1, v).unwrap() == compose(c, p1, q).unwrap()
                        && compose(c, q2, v).unwrap() == compose(c, p2, q).unwrap()
                })
                .map(move |q| (e, v, q))
        })
    })
}

/// Condition (e): any two factorizations produced as in (d) are coequalized
/// by some `(F, u ∈ W, ũ)` with `v∘u = ṽ∘ũ` and `q∘u = q̃∘ũ`.
pub fn check_condition_e(
    c: &FinCategory,
    w: &MorClass,
    f1: MorId,
    f2: MorId,
    cand: (ObjId, MorId, MorId),
) -> Result<bool> {
    w.check_parent(c)?;
    check_candidate_pre(c, f1, f2, cand)?;
    let (cc, p1, p2) = cand;
    for d in c.objects() {
        for q1 in c.hom(d, c.src(f1)) {
            for q2 in c.hom(d, c.src(f2)) {
                if compose(c, f1, q1)? != compose(c, f2, q2)? {
                    continue;
                }
                let facts: Vec<_> =
                    d_factorizations(c, w, (p1, p2), (d, q1, q2), cc).collect();
                for &(e, v, q) in &facts {
                    for &(et, vt, qt) in &facts {
                        let mut found = false;
                        'search: for f_obj in c.objects() {
                            for u in c.hom(f_obj, e) {
                                if !w.contains(u) {
                                    continue;
                                }
                                for ut in c.hom(f_obj, et) {
                                    if compose(c, v, u)? == compose(c, vt, ut)?
                                        && compose(c, q, u)? == compose(c, qt, ut)?
                                    {
                                        found = true;
                                        break 'search;
                                    }
                                }
                            }
                        }
                        if !found {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Is the localized square on the candidate cone a strong fiber product?
/// Decided by the conjunction of conditions (d) and (e).
pub fn is_strong_fraction_pullback(
    c: &FinCategory,
    w: &MorClass,
    f1: MorId,
    f2: MorId,
    cand: (ObjId, MorId, MorId),
) -> Result<bool> {
    Ok(check_condition_d(c, w, f1, f2, cand)? && check_condition_e(c, w, f1, f2, cand)?)
}

/// The localized-side pullback test used for the oracle cross-check: does the
/// image of the candidate cone satisfy the universal property in `loc.base`
/// for the cospan of the classes of `(B1, w1, f1)` and `(B2, w2, f2)`?
pub fn localized_cone_is_pullback(
    c: &FinCategory,
    loc: &FractionCategory,
    w1_f1: (MorId, MorId),
    w2_f2: (MorId, MorId),
    cand: (ObjId, MorId, MorId),
) -> Result<bool> {
    let cls = |wleg: MorId, fleg: MorId| -> Result<MorId> {
        loc.class_of_span(&Span {
            apex: c.src(fleg),
            leg_w: wleg,
            leg_f: fleg,
        })
        .ok_or_else(|| Error::Precondition("span not in localization (w-leg ∉ W?)".into()))
    };
    let lf1 = cls(w1_f1.0, w1_f1.1)?;
    let lf2 = cls(w2_f2.0, w2_f2.1)?;
    let (cc, p1, p2) = cand;
    let lp1 = loc.embed(c, p1);
    let lp2 = loc.embed(c, p2);
    Ok(is_pullback_cone(&loc.base, lf1, lf2, cc, lp1, lp2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{self, are_isomorphic_categories, pullback_oracle};

    #[test]
    fn cf_axioms_arrow() {
        let c = fincat::arrow();
        let w = fincat::arrow_w(&c);
        let report = check_cf_axioms(&c, &w).unwrap();
        assert!(report.all_pass());
    }

    #[test]
    fn cf1_fails_without_identities() {
        let c = fincat::arrow();
        let w = MorClass::new(&c, [c.mor_by_name("w").unwrap()]).unwrap();
        let report = check_cf_axioms(&c, &w).unwrap();
        assert!(!report.cf1.pass);
        assert_eq!(report.cf1.witness, Some(vec![c.id(ObjId(0))]));
    }

    #[test]
    fn cf3_fails_on_diamond_inverting_top_edge() {
        let c = fincat::diamond();
        let mut members: Vec<MorId> = c.objects().map(|a| c.id(a)).collect();
        members.push(c.mor_by_name("b1a").unwrap());
        let w = MorClass::new(&c, members).unwrap();
        let report = check_cf_axioms(&c, &w).unwrap();
        assert!(!report.cf3.pass);
        let witness = report.cf3.witness.unwrap();
        assert_eq!(c.mor_name(witness[0]), "b1a");
        assert_eq!(c.mor_name(witness[1]), "b2a");
    }

    #[test]
    fn cf_axioms_diamond_w() {
        let c = fincat::diamond();
        let w = fincat::diamond_w(&c);
        assert!(check_cf_axioms(&c, &w).unwrap().all_pass());
    }

    #[test]
    fn spans_arrow() {
        let c = fincat::arrow();
        let w = fincat::arrow_w(&c);
        let x = c.obj_by_name("X").unwrap();
        let y = c.obj_by_name("Y").unwrap();
        let spans_yy = enumerate_spans(&c, &w, y, y).unwrap();
        assert_eq!(spans_yy.len(), 2); // (Y,id,id) and (X,w,w)
        let spans_xy = enumerate_spans(&c, &w, x, y).unwrap();
        assert_eq!(spans_xy.len(), 1);
        assert!(spans_equivalent(&c, &w, &spans_yy[0], &spans_yy[1]).unwrap());
    }

    #[test]
    fn span_equivalence_reflexive_symmetric() {
        let c = fincat::diamond();
        let w = fincat::diamond_w(&c);
        for a in c.objects() {
            for b in c.objects() {
                let spans = enumerate_spans_unchecked(&c, &w, a, b);
                for s in &spans {
                    assert!(spans_equivalent(&c, &w, s, s).unwrap());
                }
                for s1 in &spans {
                    for s2 in &spans {
                        assert_eq!(
                            spans_equivalent(&c, &w, s1, s2).unwrap(),
                            spans_equivalent(&c, &w, s2, s1).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn identities_localization_isomorphic() {
        for c in [
            fincat::arrow(),
            fincat::diamond(),
            fincat::double_diamond(),
            fincat::parallel(),
            fincat::z2grp(),
            fincat::fork(),
        ] {
            let w = MorClass::identities(&c);
            let loc = localize(&c, &w).unwrap();
            assert!(
                are_isomorphic_categories(&c, &loc.base).is_some(),
                "{} vs its identity localization",
                c.name
            );
        }
    }

    #[test]
    fn arrow_localization_singleton_homs() {
        let c = fincat::arrow();
        let w = fincat::arrow_w(&c);
        let loc = localize(&c, &w).unwrap();
        for a in loc.base.objects() {
            for b in loc.base.objects() {
                assert_eq!(loc.base.hom(a, b).len(), 1);
            }
        }
    }

    #[test]
    fn diamond_w_inverts_cb1() {
        let c = fincat::diamond();
        let w = fincat::diamond_w(&c);
        let loc = localize(&c, &w).unwrap();
        let cobj = c.obj_by_name("c").unwrap();
        let cb1 = c.mor_by_name("cb1").unwrap();
        let fwd = loc.embed(&c, cb1);
        let bwd = loc
            .class_of_span(&Span {
                apex: cobj,
                leg_w: cb1,
                leg_f: c.id(cobj),
            })
            .unwrap();
        let b1 = c.obj_by_name("b1").unwrap();
        assert_eq!(
            compose(&loc.base, bwd, fwd).unwrap(),
            loc.base.id(cobj)
        );
        assert_eq!(compose(&loc.base, fwd, bwd).unwrap(), loc.base.id(b1));
    }

    #[test]
    fn composition_representative_independent() {
        let c = fincat::diamond();
        let w = fincat::diamond_w(&c);
        let loc = localize(&c, &w).unwrap();
        for g in loc.base.mor_ids() {
            for f in loc.base.mor_ids() {
                if loc.base.tgt(f) != loc.base.src(g) {
                    continue;
                }
                let expected = compose(&loc.base, g, f).unwrap();
                for sf in &loc.class_of[f.0 as usize] {
                    for sg in &loc.class_of[g.0 as usize] {
                        let composite = compose_spans(&c, &w, sf, sg).unwrap();
                        assert_eq!(loc.class_of_span(&composite), Some(expected));
                    }
                }
            }
        }
    }

    #[test]
    fn witness_relation_transitive_on_fixtures() {
        // The transitive closure must add no new pairs on shipped fixtures.
        for (c, w) in [
            (fincat::arrow(), fincat::arrow_w(&fincat::arrow())),
            (fincat::diamond(), fincat::diamond_w(&fincat::diamond())),
            (fincat::z2grp(), MorClass::all(&fincat::z2grp())),
        ] {
            for a in c.objects() {
                for b in c.objects() {
                    let spans = enumerate_spans_unchecked(&c, &w, a, b);
                    for s1 in &spans {
                        for s2 in &spans {
                            for s3 in &spans {
                                if spans_related(&c, &w, s1, s2) && spans_related(&c, &w, s2, s3) {
                                    assert!(
                                        spans_related(&c, &w, s1, s3),
                                        "{}: relation not transitive",
                                        c.name
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn condition_d_diamond_meet() {
        let c = fincat::diamond();
        let w = MorClass::identities(&c);
        let f1 = c.mor_by_name("b1a").unwrap();
        let f2 = c.mor_by_name("b2a").unwrap();
        let cand = (
            c.obj_by_name("c").unwrap(),
            c.mor_by_name("cb1").unwrap(),
            c.mor_by_name("cb2").unwrap(),
        );
        assert!(check_condition_d(&c, &w, f1, f2, cand).unwrap());
        assert!(check_condition_e(&c, &w, f1, f2, cand).unwrap());
        assert!(is_strong_fraction_pullback(&c, &w, f1, f2, cand).unwrap());
    }

    #[test]
    fn condition_d_double_diamond_fails() {
        let c = fincat::double_diamond();
        let w = MorClass::identities(&c);
        let f1 = c.mor_by_name("b1a").unwrap();
        let f2 = c.mor_by_name("b2a").unwrap();
        let cand = (
            c.obj_by_name("c1").unwrap(),
            c.mor_by_name("c1b1").unwrap(),
            c.mor_by_name("c1b2").unwrap(),
        );
        assert!(!check_condition_d(&c, &w, f1, f2, cand).unwrap());
        assert!(!is_strong_fraction_pullback(&c, &w, f1, f2, cand).unwrap());
    }

    #[test]
    fn diamond_w_candidate_passes() {
        let c = fincat::diamond();
        let w = fincat::diamond_w(&c);
        let f1 = c.mor_by_name("b1a").unwrap();
        let f2 = c.mor_by_name("b2a").unwrap();
        let cand = (
            c.obj_by_name("c").unwrap(),
            c.mor_by_name("cb1").unwrap(),
            c.mor_by_name("cb2").unwrap(),
        );
        assert!(check_condition_e(&c, &w, f1, f2, cand).unwrap());
        assert!(is_strong_fraction_pullback(&c, &w, f1, f2, cand).unwrap());
    }

    #[test]
    fn oracle_equivalence_identity_class() {
        // For W = identities, the fraction-side verdict must agree with the
        // plain pullback oracle on C itself.
        for c in [fincat::diamond(), fincat::double_diamond(), fincat::fork()] {
            let w = MorClass::identities(&c);
            for f1 in c.mor_ids() {
                for f2 in c.mor_ids() {
                    if c.tgt(f1) != c.tgt(f2) {
                        continue;
                    }
                    let oracle = pullback_oracle(&c, f1, f2).unwrap();
                    let mut any_cand = false;
                    for apex in c.objects() {
                        for p1 in c.hom(apex, c.src(f1)) {
                            for p2 in c.hom(apex, c.src(f2)) {
                                if compose(&c, f1, p1).unwrap() != compose(&c, f2, p2).unwrap() {
                                    continue;
                                }
                                let frac = is_strong_fraction_pullback(
                                    &c,
                                    &w,
                                    f1,
                                    f2,
                                    (apex, p1, p2),
                                )
                                .unwrap();
                                let direct =
                                    crate::fincat::is_pullback_cone(&c, f1, f2, apex, p1, p2);
                                assert_eq!(frac, direct, "{}", c.name);
                                any_cand |= frac;
                            }
                        }
                    }
                    assert_eq!(any_cand, oracle.is_some(), "{}", c.name);
                }
            }
        }
    }
}
