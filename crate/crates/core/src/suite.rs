//! Cross-cutting property batteries over the fixture corpus.
//!
//! Each battery pairs two independent computations of the same mathematical
//! fact (axiom checkers against each other, finite conditions against direct
//! universal-property searches, computed compositions against printed closed
//! forms) and reports the first disagreement.  The batteries back both the
//! CLI `suite` subcommand and the acceptance tests.

use crate::bf_fractions::{
    self, ChoicePolicy, OneClass, QuintupleRep, TripleMor, build_choice_table, check_bf_axioms,
    compose_triples, localize_bicategory, loop_z2, right_saturation_witness,
};
use crate::bicat::{
    FinBicategory, SizeCaps, Transform, TwoFunctor, WfpSquare, check_b1, check_b2,
    check_strict_2functor_transport, find_internal_equivalence, is_weak_fiber_product,
    validate_bicategory,
};
use crate::cf_fractions::{self, Span};
use crate::fincat::{self, FinCategory, MorClass, MorId, compose};
use crate::wfp_fractions::{
    TheoremContext, property_abc_iff_localized_wfp, property_general_square_wfp,
    property_strong_pullback_degeneration, property_unit_square_iff_cospan_wfp,
    theorem_context_for, verify_theorem_suite,
};
use crate::{Error, Result};

/// Outcome of one battery: pass, or the first disagreement found.
#[derive(Clone, Debug)]
pub struct SuiteCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl SuiteCheck {
    fn ok(name: &str, detail: String) -> Self {
        SuiteCheck {
            name: name.into(),
            pass: true,
            detail,
        }
    }
    fn fail(name: &str, detail: String) -> Self {
        SuiteCheck {
            name: name.into(),
            pass: false,
            detail,
        }
    }
}

/// Per-fixture report produced by [`run_suite`].
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub fixture: String,
    pub checks: Vec<SuiteCheck>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn core_fixtures() -> Vec<FinCategory> {
    vec![
        fincat::arrow(),
        fincat::diamond(),
        fincat::double_diamond(),
        fincat::parallel(),
        fincat::z2grp(),
    ]
}

/// Three candidate classes per category: identities, everything, and
/// identities plus the first non-identity morphism.
fn w_variants(c: &FinCategory) -> Vec<(String, MorClass)> {
    let mut out = vec![
        ("identities".to_string(), MorClass::identities(c)),
        ("all".to_string(), MorClass::all(c)),
    ];
    if let Some(m) = c.mor_ids().find(|&m| !c.is_identity(m)) {
        let mut mem: Vec<MorId> = c.objects().map(|a| c.id(a)).collect();
        mem.push(m);
        out.push((
            format!("identities+{}", c.mor_name(m)),
            MorClass::new(c, mem).unwrap(),
        ));
    }
    out
}

fn trivial_pair(c: &FinCategory, w: &MorClass) -> Result<(FinBicategory, OneClass)> {
    let b = FinBicategory::from_trivial(c);
    let wc = OneClass::from_mor_class(c, &b, w)?;
    Ok((b, wc))
}

/// Criterion 1: the two axiom checkers agree axiom-by-axiom on trivial
/// promotions, over all core fixtures and candidate-class variants.
pub fn criterion_axiom_agreement() -> Result<SuiteCheck> {
    const NAME: &str = "axiom-agreement";
    let mut cases = 0usize;
    for c in core_fixtures() {
        for (vname, w) in w_variants(&c) {
            let cf = cf_fractions::check_cf_axioms(&c, &w)?;
            let (b, wc) = trivial_pair(&c, &w)?;
            let bf = check_bf_axioms(&b, &wc)?;
            let pairs = [
                ("1", cf.cf1.pass, bf.bf1.pass),
                ("2", cf.cf2.pass, bf.bf2.pass),
                ("3", cf.cf3.pass, bf.bf3.pass),
                ("4", cf.cf4.pass, bf.bf4a.pass),
            ];
            for (ax, one_cat, two_cat) in pairs {
                if one_cat != two_cat {
                    return Ok(SuiteCheck::fail(
                        NAME,
                        format!("{} / {}: axiom {} disagrees", c.name, vname, ax),
                    ));
                }
            }
            // On a trivial promotion the remaining axioms degenerate: every
            // 2-cell is an invertible identity, so they can only fail
            // together with the shared ones.
            if !bf.bf5.pass {
                return Ok(SuiteCheck::fail(
                    NAME,
                    format!("{} / {}: isomorphism-saturation failed", c.name, vname),
                ));
            }
            cases += 1;
        }
    }
    Ok(SuiteCheck::ok(NAME, format!("{cases} fixture/class cases agree")))
}

/// Criterion 2: localizing at identities is an isomorphism, the arrow
/// localization collapses to singleton hom-sets, and every localized
/// bicategory satisfies the full law battery.
pub fn criterion_localization_sanity() -> Result<SuiteCheck> {
    const NAME: &str = "localization-sanity";
    for c in core_fixtures().into_iter().chain([fincat::fork()]) {
        let w = MorClass::identities(&c);
        let loc = cf_fractions::localize(&c, &w)?;
        if fincat::are_isomorphic_categories(&loc.base, &c).is_none() {
            return Ok(SuiteCheck::fail(
                NAME,
                format!("{}: identity localization not isomorphic", c.name),
            ));
        }
    }
    let c = fincat::arrow();
    let loc = cf_fractions::localize(&c, &fincat::arrow_w(&c))?;
    for a in loc.base.objects() {
        for b in loc.base.objects() {
            if loc.base.hom(a, b).len() != 1 {
                return Ok(SuiteCheck::fail(
                    NAME,
                    "arrow localization hom-set not a singleton".into(),
                ));
            }
        }
    }
    for fixture in ["arrow", "diamond-trivial", "diamond-w", "z2grp", "loop-z2"] {
        let ctx = theorem_context_for(fixture)?;
        let report = validate_bicategory(&ctx.loc.bicat);
        if !report.ok() {
            return Ok(SuiteCheck::fail(
                NAME,
                format!("{fixture}: localized bicategory violates {:?}", report.violations[0]),
            ));
        }
    }
    Ok(SuiteCheck::ok(NAME, "identity/arrow localizations and law batteries hold".into()))
}

/// Criterion 3: the finite strong-fiber-product conditions agree with the
/// direct universal-property search inside the localized category, for every
/// cospan and candidate cone on every admissible fixture/class pair.
pub fn criterion_oracle_equivalence() -> Result<SuiteCheck> {
    const NAME: &str = "oracle-equivalence";
    let mut cases: Vec<(FinCategory, MorClass)> = vec![
        {
            let c = fincat::arrow();
            let w = fincat::arrow_w(&c);
            (c, w)
        },
        {
            let c = fincat::diamond();
            let w = fincat::diamond_w(&c);
            (c, w)
        },
        {
            let c = fincat::z2grp();
            let w = MorClass::all(&c);
            (c, w)
        },
        {
            let c = fincat::arrow_ext();
            let w = fincat::arrow_ext_w(&c);
            (c, w)
        },
    ];
    for c in core_fixtures().into_iter().chain([fincat::fork()]) {
        let w = MorClass::identities(&c);
        cases.push((c, w));
    }
    let mut checked = 0usize;
    for (c, w) in &cases {
        let loc = cf_fractions::localize(c, w)?;
        for f1 in c.mor_ids() {
            for f2 in c.mor_ids() {
                if c.tgt(f1) != c.tgt(f2) {
                    continue;
                }
                for apex in c.objects() {
                    for p1 in c.hom(apex, c.src(f1)) {
                        for p2 in c.hom(apex, c.src(f2)) {
                            if compose(c, f1, p1)? != compose(c, f2, p2)? {
                                continue;
                            }
                            let cand = (apex, p1, p2);
                            let strong =
                                cf_fractions::is_strong_fraction_pullback(c, w, f1, f2, cand)?;
                            // Direct check, and re-indexed along every pair
                            // of invertible class members out of the feet.
                            for w1 in c.mor_ids() {
                                if !w.contains(w1) || c.src(w1) != c.src(f1) {
                                    continue;
                                }
                                for w2 in c.mor_ids() {
                                    if !w.contains(w2) || c.src(w2) != c.src(f2) {
                                        continue;
                                    }
                                    let shifted = (
                                        apex,
                                        compose(c, w1, p1)?,
                                        compose(c, w2, p2)?,
                                    );
                                    let oracle = cf_fractions::localized_cone_is_pullback(
                                        c,
                                        &loc,
                                        (w1, f1),
                                        (w2, f2),
                                        shifted,
                                    )?;
                                    if strong != oracle {
                                        return Ok(SuiteCheck::fail(
                                            NAME,
                                            format!(
                                                "{}: cospan ({}, {}) candidate ({}, {}, {}) \
                                                 legs ({}, {}): conditions {} vs oracle {}",
                                                c.name,
                                                c.mor_name(f1),
                                                c.mor_name(f2),
                                                c.object_name(apex),
                                                c.mor_name(p1),
                                                c.mor_name(p2),
                                                c.mor_name(w1),
                                                c.mor_name(w2),
                                                strong,
                                                oracle
                                            ),
                                        ));
                                    }
                                    checked += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(SuiteCheck::ok(NAME, format!("{checked} cone verdicts agree")))
}

/// Criterion 4: the headline equivalence between the three finite conditions
/// and the localized weak-fiber-product verdict, with both truth values
/// exercised across the corpus.
pub fn criterion_headline_equivalence() -> Result<SuiteCheck> {
    const NAME: &str = "headline-equivalence";
    let fixtures = [
        "arrow",
        "diamond-trivial",
        "diamond-w",
        "double-diamond",
        "parallel",
        "fork",
        "z2grp",
        "loop-z2",
    ];
    for fixture in fixtures {
        let ctx = theorem_context_for(fixture)?;
        let p = property_abc_iff_localized_wfp(&ctx)?;
        if !p.pass {
            return Ok(SuiteCheck::fail(NAME, format!("{fixture}: {}", p.detail)));
        }
    }
    // Both truth values must occur: the diamond meet succeeds, the double
    // diamond's competing apexes fail.
    let pos = theorem_context_for("diamond-trivial")?;
    let b = &pos.ambient;
    let meet = crate::wfp_fractions::AbcInput {
        f1: b.one_by_name("b1a").unwrap(),
        f2: b.one_by_name("b2a").unwrap(),
        c: b.obj_by_name("c").unwrap(),
        p1: b.one_by_name("cb1").unwrap(),
        p2: b.one_by_name("cb2").unwrap(),
        omega: b.id2(b.one_by_name("ca").unwrap()),
    };
    if !crate::wfp_fractions::check_conditions(b, &pos.w, &meet)?.all_pass() {
        return Ok(SuiteCheck::fail(NAME, "diamond meet unexpectedly fails".into()));
    }
    let neg = theorem_context_for("double-diamond")?;
    let b = &neg.ambient;
    let cand = crate::wfp_fractions::AbcInput {
        f1: b.one_by_name("b1a").unwrap(),
        f2: b.one_by_name("b2a").unwrap(),
        c: b.obj_by_name("c1").unwrap(),
        p1: b.one_by_name("c1b1").unwrap(),
        p2: b.one_by_name("c1b2").unwrap(),
        omega: b.id2(b.one_by_name("c1a").unwrap()),
    };
    if crate::wfp_fractions::check_conditions(b, &neg.w, &cand)?.all_pass() {
        return Ok(SuiteCheck::fail(NAME, "double-diamond apex unexpectedly passes".into()));
    }
    Ok(SuiteCheck::ok(NAME, format!("{} fixtures, both verdicts exercised", fixtures.len())))
}

/// Criterion 5: existence equivalence across W-shifted cospans, and the
/// general-square builder preserving the weak-fiber-product property.
pub fn criterion_existence_and_general_squares() -> Result<SuiteCheck> {
    const NAME: &str = "existence-and-general-squares";
    for fixture in ["diamond-w", "arrow-ext"] {
        let ctx = theorem_context_for(fixture)?;
        let p = property_unit_square_iff_cospan_wfp(&ctx)?;
        if !p.pass {
            return Ok(SuiteCheck::fail(NAME, format!("{fixture}: {}", p.detail)));
        }
    }
    for fixture in ["arrow", "diamond-w", "arrow-ext", "z2grp"] {
        let ctx = theorem_context_for(fixture)?;
        let p = property_general_square_wfp(&ctx)?;
        if !p.pass {
            return Ok(SuiteCheck::fail(NAME, format!("{fixture}: {}", p.detail)));
        }
    }
    Ok(SuiteCheck::ok(NAME, "existence equivalence and general squares verified".into()))
}

fn ambient_squares(b: &FinBicategory) -> Result<Vec<WfpSquare>> {
    let mut out = Vec::new();
    for f1 in b.one_ids() {
        for f2 in b.one_ids() {
            if b.one_tgt(f1) != b.one_tgt(f2) {
                continue;
            }
            for inp in crate::wfp_fractions::enumerate_candidates(b, f1, f2)? {
                out.push(WfpSquare {
                    g1: f1,
                    g2: f2,
                    r1: inp.p1,
                    r2: inp.p2,
                    omega: inp.omega,
                });
            }
        }
    }
    Ok(out)
}

/// Per-triple verdicts compared under a transform that keeps the cospan feet
/// (and, when `with_apex` holds, the apex) fixed.
fn per_instance_verdicts_match(
    b: &FinBicategory,
    sq: &WfpSquare,
    out: &WfpSquare,
    with_apex: bool,
) -> Result<bool> {
    for d in b.objects() {
        for s1 in b.hom1(d, b.one_src(sq.g1)) {
            for s2 in b.hom1(d, b.one_src(sq.g2)) {
                if check_b1(b, sq, d, s1, s2)? != check_b1(b, out, d, s1, s2)? {
                    return Ok(false);
                }
            }
        }
        if with_apex {
            for t in b.hom1(d, sq.apex(b)) {
                for tp in b.hom1(d, sq.apex(b)) {
                    if check_b2(b, sq, d, t, tp)? != check_b2(b, out, d, t, tp)? {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Criterion 6: rewriting a square along any admissible transform — leg
/// twists, apex equivalences, pre/post-composition with equivalences, and
/// transport along a strict weak equivalence — never changes the verdicts.
pub fn criterion_transport_invariance() -> Result<SuiteCheck> {
    const NAME: &str = "transport-invariance";
    let ambients = vec![
        FinBicategory::from_trivial(&fincat::diamond_ext()),
        loop_z2(),
    ];
    let mut checked = 0usize;
    for b in &ambients {
        let squares = ambient_squares(b)?;
        for sq in &squares {
            let before = is_weak_fiber_product(b, sq)?;
            // Leg twists.
            for om1 in b.cell_ids() {
                if b.cell_src(om1) != sq.g1 || !b.is_invertible(om1) {
                    continue;
                }
                for om2 in b.cell_ids() {
                    if b.cell_src(om2) != sq.g2 || !b.is_invertible(om2) {
                        continue;
                    }
                    let out = crate::bicat::transform_wfp_diagram(
                        b,
                        sq,
                        &Transform::Twist { om1, om2 },
                    )?;
                    if is_weak_fiber_product(b, &out)? != before
                        || !per_instance_verdicts_match(b, sq, &out, true)?
                    {
                        return Ok(SuiteCheck::fail(
                            NAME,
                            format!("{}: twist changed a verdict", b.name),
                        ));
                    }
                    checked += 1;
                }
            }
            // Apex equivalences.
            for e in b.one_ids() {
                if b.one_tgt(e) != sq.apex(b) || find_internal_equivalence(b, e).is_none() {
                    continue;
                }
                let out =
                    crate::bicat::transform_wfp_diagram(b, sq, &Transform::ApexEquiv { e })?;
                if is_weak_fiber_product(b, &out)? != before
                    || !per_instance_verdicts_match(b, sq, &out, false)?
                {
                    return Ok(SuiteCheck::fail(
                        NAME,
                        format!("{}: apex equivalence changed a verdict", b.name),
                    ));
                }
                checked += 1;
            }
            // Post-composition with an equivalence.
            for e in b.one_ids() {
                if b.one_src(e) != b.one_tgt(sq.g1) || find_internal_equivalence(b, e).is_none()
                {
                    continue;
                }
                let out =
                    crate::bicat::transform_wfp_diagram(b, sq, &Transform::PostEquiv { e })?;
                if is_weak_fiber_product(b, &out)? != before
                    || !per_instance_verdicts_match(b, sq, &out, true)?
                {
                    return Ok(SuiteCheck::fail(
                        NAME,
                        format!("{}: post-equivalence changed a verdict", b.name),
                    ));
                }
                checked += 1;
            }
            // Pre-composition with adjoint equivalences at both feet.
            let feet_eqs = |foot: crate::fincat::ObjId| {
                b.one_ids()
                    .filter(|&e| b.one_tgt(e) == foot)
                    .filter_map(|e| find_internal_equivalence(b, e))
                    .collect::<Vec<_>>()
            };
            for e1 in feet_eqs(b.one_src(sq.g1)) {
                for e2 in feet_eqs(b.one_src(sq.g2)) {
                    let out = crate::bicat::transform_wfp_diagram(
                        b,
                        sq,
                        &Transform::PreEquiv { e1, e2 },
                    )?;
                    if is_weak_fiber_product(b, &out)? != before {
                        return Ok(SuiteCheck::fail(
                            NAME,
                            format!("{}: pre-equivalence changed the verdict", b.name),
                        ));
                    }
                    checked += 1;
                }
            }
            // Transport along the identity strict weak equivalence.
            let f = TwoFunctor::identity(b);
            if check_strict_2functor_transport(&f, b, b, sq)? != before {
                return Ok(SuiteCheck::fail(
                    NAME,
                    format!("{}: functor transport changed the verdict", b.name),
                ));
            }
        }
    }
    Ok(SuiteCheck::ok(NAME, format!("{checked} transformed squares invariant")))
}

/// Criterion 7: the computed whiskerings, associators, and class-equality
/// criterion in localized bicategories match their printed closed forms.
pub fn criterion_closed_form_lemmas() -> Result<SuiteCheck> {
    const NAME: &str = "closed-form-lemmas";
    let mut checked = 0usize;
    for fixture in ["arrow", "diamond-w", "loop-z2"] {
        let ctx = theorem_context_for(fixture)?;
        let b = &ctx.ambient;
        let loc = &ctx.loc;
        let lk = |t: &TripleMor| loc.one_of(t).ok_or_else(|| Error::Defect("triple".into()));
        // Associators with identity legs on the two outer factors are
        // identity classes.
        for t1 in &loc.triples {
            for t2 in &loc.triples {
                if t2.w != b.id1(t2.apex) || t1.target(b) != t2.source(b) {
                    continue;
                }
                for t3 in &loc.triples {
                    if t3.w != b.id1(t3.apex) || t2.target(b) != t3.source(b) {
                        continue;
                    }
                    let th = loc.bicat.th(lk(t3)?, lk(t2)?, lk(t1)?)?;
                    if th != loc.bicat.id2(loc.bicat.cell_src(th)) {
                        return Ok(SuiteCheck::fail(
                            NAME,
                            format!("{fixture}: non-identity associator with identity legs"),
                        ));
                    }
                    checked += 1;
                }
            }
        }
        // Right whiskering of an identity-shaped cell: the closed form keeps
        // the cell at the inner apex with the f-leg whiskered.
        for t in &loc.triples {
            let foot = t.target(b);
            for h1 in b.one_ids() {
                if b.one_src(h1) != foot {
                    continue;
                }
                for h2 in b.hom1(foot, b.one_tgt(h1)) {
                    for gamma in b.cells_between(h1, h2) {
                        let idb = b.id1(foot);
                        let outer1 = TripleMor { apex: foot, w: idb, f: h1 };
                        let outer2 = TripleMor { apex: foot, w: idb, f: h2 };
                        let rep = QuintupleRep {
                            apex: foot,
                            v1: idb,
                            v2: idb,
                            alpha: b.id2(idb),
                            beta: gamma,
                        };
                        let computed = bf_fractions::rwhisker_rep(
                            b, &ctx.w, &ctx.choices, &rep, &outer1, &outer2, t,
                        )?;
                        let src = lk(&compose_triples(b, &ctx.choices, &outer1, t)?)?;
                        let tgt = lk(&compose_triples(b, &ctx.choices, &outer2, t)?)?;
                        let ida = b.id1(t.apex);
                        let expect = QuintupleRep {
                            apex: t.apex,
                            v1: ida,
                            v2: ida,
                            alpha: b.id2(t.w),
                            beta: b.wr(gamma, t.f)?,
                        };
                        if loc.class_of(src, tgt, &computed) != loc.class_of(src, tgt, &expect) {
                            return Ok(SuiteCheck::fail(
                                NAME,
                                format!("{fixture}: right-whisker closed form mismatch"),
                            ));
                        }
                        checked += 1;
                    }
                }
            }
        }
        // Left whiskering by an identity-legged triple: the closed form
        // whiskers only the f-component.
        for (ci, cls) in loc.classes.iter().enumerate() {
            let t1 = loc.triples[cls.src.0 as usize];
            let t2 = loc.triples[cls.tgt.0 as usize];
            let r = cls.members[0];
            for g in b.one_ids() {
                if b.one_src(g) != t1.target(b) {
                    continue;
                }
                let outer = TripleMor {
                    apex: t1.target(b),
                    w: b.id1(t1.target(b)),
                    f: g,
                };
                let computed = bf_fractions::lwhisker_rep(
                    b, &ctx.w, &ctx.choices, &outer, &t1, &t2, &r,
                )?;
                let src = lk(&compose_triples(b, &ctx.choices, &outer, &t1)?)?;
                let tgt = lk(&compose_triples(b, &ctx.choices, &outer, &t2)?)?;
                let expect = QuintupleRep {
                    apex: r.apex,
                    v1: r.v1,
                    v2: r.v2,
                    alpha: r.alpha,
                    beta: b.wl(g, r.beta)?,
                };
                if loc.class_of(src, tgt, &computed) != loc.class_of(src, tgt, &expect) {
                    return Ok(SuiteCheck::fail(
                        NAME,
                        format!("{fixture}: left-whisker closed form mismatch (class {ci})"),
                    ));
                }
                checked += 1;
            }
        }
        // Class-equality criterion for cells with equal legs and identity
        // α-component.
        for t1 in &loc.triples {
            for t2 in &loc.triples {
                if t1.apex != t2.apex || t1.w != t2.w {
                    continue;
                }
                let (src, tgt) = (lk(t1)?, lk(t2)?);
                let mut shaped: Vec<QuintupleRep> = Vec::new();
                for cls in &loc.classes {
                    if cls.src != src || cls.tgt != tgt {
                        continue;
                    }
                    for m in &cls.members {
                        if m.v1 == m.v2 && m.alpha == b.id2(b.c1(t1.w, m.v1)?) {
                            shaped.push(*m);
                        }
                    }
                }
                for r in &shaped {
                    for rp in &shaped {
                        let equal = loc.class_of(src, tgt, r) == loc.class_of(src, tgt, rp);
                        let witnessed =
                            leg_shared_witness(b, &ctx.w, t1.f, t2.f, r, rp)?;
                        if equal != witnessed {
                            return Ok(SuiteCheck::fail(
                                NAME,
                                format!(
                                    "{fixture}: class-equality criterion disagrees \
                                     (equal={equal}, witnessed={witnessed})"
                                ),
                            ));
                        }
                        checked += 1;
                    }
                }
            }
        }
        // Saturation witnesses exist for every admissible pair.
        for w0 in b.one_ids() {
            if !ctx.w.contains(w0) {
                continue;
            }
            for v in b.one_ids() {
                if b.one_tgt(v) != b.one_src(w0) || !ctx.w.contains(b.c1(w0, v)?) {
                    continue;
                }
                right_saturation_witness(b, &ctx.w, w0, v)?;
                checked += 1;
            }
        }
    }
    Ok(SuiteCheck::ok(NAME, format!("{checked} closed-form instances match")))
}

/// Witness side of the class-equality criterion: some `(D, z ∈ W, z′, μ)`
/// with `(i_{f²}∗μ) ⊙ (γ∗i_z) ⊙ (i_{f¹}∗μ⁻¹) = γ′∗i_{z′}`.
fn leg_shared_witness(
    b: &FinBicategory,
    w: &OneClass,
    f1: crate::bicat::OneId,
    f2: crate::bicat::OneId,
    r: &QuintupleRep,
    rp: &QuintupleRep,
) -> Result<bool> {
    for d in b.objects() {
        for z in b.hom1(d, r.apex) {
            if !w.contains(z) {
                continue;
            }
            for zp in b.hom1(d, rp.apex) {
                let vz = b.c1(r.v1, z)?;
                let vpzp = b.c1(rp.v1, zp)?;
                for mu in b.cells_between(vz, vpzp) {
                    if !b.is_invertible(mu) {
                        continue;
                    }
                    let mu_inv = b.inverse(mu).unwrap();
                    let lhs = b.vchain(&[
                        b.wl(f1, mu_inv)?,
                        b.wr(r.beta, z)?,
                        b.wl(f2, mu)?,
                    ])?;
                    if lhs == b.wr(rp.beta, zp)? {
                        return Ok(true);
                    }
                }
            }
        }
    }
    Ok(false)
}

/// Criterion 8: distinct choice tables produce localizations with identical
/// 1-cells, identical 2-cell class data, and identical vertical composition.
pub fn criterion_choice_independence() -> Result<SuiteCheck> {
    const NAME: &str = "choice-independence";
    for fixture in ["arrow", "diamond-w", "z2grp", "loop-z2"] {
        let ctx = theorem_context_for(fixture)?;
        let b = &ctx.ambient;
        let lex = build_choice_table(b, &ctx.w, ChoicePolicy::Lex)?;
        let loc2 = localize_bicategory(b, &ctx.w, &lex, &SizeCaps::default())?;
        let loc1 = &ctx.loc;
        if loc1.triples != loc2.triples || loc1.classes.len() != loc2.classes.len() {
            return Ok(SuiteCheck::fail(
                NAME,
                format!("{fixture}: localizations differ in carrier"),
            ));
        }
        for (c1d, c2d) in loc1.classes.iter().zip(&loc2.classes) {
            if c1d.src != c2d.src || c1d.tgt != c2d.tgt || c1d.members != c2d.members {
                return Ok(SuiteCheck::fail(
                    NAME,
                    format!("{fixture}: class data differ"),
                ));
            }
        }
        for x in loc1.bicat.cell_ids() {
            for y in loc1.bicat.cell_ids() {
                let a = loc1.bicat.v(x, y);
                let bb = loc2.bicat.v(x, y);
                match (a, bb) {
                    (Ok(u), Ok(v)) if u == v => {}
                    (Err(_), Err(_)) => {}
                    _ => {
                        return Ok(SuiteCheck::fail(
                            NAME,
                            format!("{fixture}: vertical composition differs"),
                        ));
                    }
                }
            }
        }
    }
    Ok(SuiteCheck::ok(NAME, "choice policies agree on class data".into()))
}

/// The per-fixture battery behind the CLI `suite` subcommand.
pub fn run_suite(fixture: &str) -> Result<SuiteReport> {
    let ctx: TheoremContext = theorem_context_for(fixture)?;
    let mut checks = Vec::new();
    let bf = check_bf_axioms(&ctx.ambient, &ctx.w)?;
    checks.push(if bf.all_pass() {
        SuiteCheck::ok("fraction-axioms", "all axioms hold".into())
    } else {
        SuiteCheck::fail("fraction-axioms", "an axiom fails".into())
    });
    let val = validate_bicategory(&ctx.loc.bicat);
    checks.push(if val.ok() {
        SuiteCheck::ok("localized-laws", "all bicategory laws hold".into())
    } else {
        SuiteCheck::fail("localized-laws", format!("{:?}", val.violations[0]))
    });
    let theorems = verify_theorem_suite(fixture)?;
    for p in theorems.properties {
        checks.push(SuiteCheck {
            name: p.name,
            pass: p.pass,
            detail: p.detail,
        });
    }
    if let Some((c, w)) = &ctx.cat {
        // Spot-check the span-calculus agreement on the underlying category.
        let p = property_strong_pullback_degeneration(&ctx)?;
        checks.push(SuiteCheck {
            name: p.name,
            pass: p.pass,
            detail: p.detail,
        });
        let loc = cf_fractions::localize(c, w)?;
        let embedded_ok = c.mor_ids().all(|f| {
            loc.class_of_span(&Span {
                apex: c.src(f),
                leg_w: c.id(c.src(f)),
                leg_f: f,
            })
            .is_some()
        });
        checks.push(if embedded_ok {
            SuiteCheck::ok("span-embedding", "all morphisms embed".into())
        } else {
            SuiteCheck::fail("span-embedding", "a morphism fails to embed".into())
        });
    }
    Ok(SuiteReport {
        fixture: fixture.to_string(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axiom_agreement_battery() {
        let c = criterion_axiom_agreement().unwrap();
        assert!(c.pass, "{}", c.detail);
    }

    #[test]
    fn localization_sanity_battery() {
        let c = criterion_localization_sanity().unwrap();
        assert!(c.pass, "{}", c.detail);
    }

    #[test]
    fn oracle_equivalence_battery() {
        let c = criterion_oracle_equivalence().unwrap();
        assert!(c.pass, "{}", c.detail);
    }

    #[test]
    fn transport_invariance_battery() {
        let c = criterion_transport_invariance().unwrap();
        assert!(c.pass, "{}", c.detail);
    }

    #[test]
    fn closed_form_lemma_battery() {
        let c = criterion_closed_form_lemmas().unwrap();
        assert!(c.pass, "{}", c.detail);
    }

    #[test]
    fn choice_independence_battery() {
        let c = criterion_choice_independence().unwrap();
        assert!(c.pass, "{}", c.detail);
    }

    #[test]
    fn suite_runs_on_diamond() {
        let report = run_suite("diamond-w").unwrap();
        assert!(report.all_pass(), "{:?}", report.checks);
    }
}
