//! Weak fiber products in the localization, decided by finite conditions in
//! the ambient.
//!
//! For a candidate square `(C, p¹, p², ω)` over a cospan `(f¹, f²)` in a
//! strict ambient `(C2, W)`, three finite conditions (a)/(b)/(c) — cone
//! factorization, 2-cell factorization, and uniqueness of 2-cell
//! factorizations up to a common restriction — hold exactly when the induced
//! unit square is a weak fiber product in the localized bicategory.  This
//! module implements the three checkers, the unit-square and general-square
//! builders, and a harness that verifies the equivalences on the fixture
//! corpus with both sides computed independently.

use crate::bf_fractions::{
    ChoiceTable, Localization, OneClass, QuintupleRep, TripleMor, build_choice_table,
    check_bf_axioms, compose_triples, localize_bicategory, loop_z2, ChoicePolicy,
};
use crate::bicat::{
    CellId, FinBicategory, OneId, SizeCaps, WfpSquare, is_weak_fiber_product,
};
use crate::cf_fractions;
use crate::fincat::{self, FinCategory, MorClass, MorId, ObjId};
use crate::{Error, Result};

/// A candidate weak-fiber-product square in the ambient: cospan
/// `f¹: B¹→A ⇐ B²→A :f²`, apex `C`, legs `p^m: C→B^m`, and invertible
/// `ω: f¹∘p¹ ⇒ f²∘p²`.
#[derive(Copy, Clone, Debug)]
pub struct AbcInput {
    pub f1: OneId,
    pub f2: OneId,
    pub c: ObjId,
    pub p1: OneId,
    pub p2: OneId,
    pub omega: CellId,
}

impl AbcInput {
    pub fn validate(&self, b: &FinBicategory) -> Result<()> {
        if b.one_tgt(self.f1) != b.one_tgt(self.f2) {
            return Err(Error::Precondition("cospan targets differ".into()));
        }
        if b.one_src(self.p1) != self.c
            || b.one_src(self.p2) != self.c
            || b.one_tgt(self.p1) != b.one_src(self.f1)
            || b.one_tgt(self.p2) != b.one_src(self.f2)
        {
            return Err(Error::Precondition("candidate legs ill-typed".into()));
        }
        let lhs = b.c1(self.f1, self.p1)?;
        let rhs = b.c1(self.f2, self.p2)?;
        if b.cell_src(self.omega) != lhs || b.cell_tgt(self.omega) != rhs {
            return Err(Error::Precondition("ω endpoints incompatible".into()));
        }
        if !b.is_invertible(self.omega) {
            return Err(Error::Precondition("ω not invertible".into()));
        }
        Ok(())
    }
}

/// Verdict for one condition: pass, or the first universally-quantified
/// instance with no completing witness.
#[derive(Clone, Debug)]
pub struct AbcCheck {
    pub pass: bool,
    pub witness: Option<String>,
}

impl AbcCheck {
    fn ok() -> Self {
        AbcCheck {
            pass: true,
            witness: None,
        }
    }
    fn fail(witness: String) -> Self {
        AbcCheck {
            pass: false,
            witness: Some(witness),
        }
    }
}

/// Combined verdict for the three conditions.
#[derive(Clone, Debug)]
pub struct AbcReport {
    pub a: AbcCheck,
    pub b: AbcCheck,
    pub c: AbcCheck,
}

impl AbcReport {
    pub fn all_pass(&self) -> bool {
        self.a.pass && self.b.pass && self.c.pass
    }
}

/// Comparison equation for a cone factorization (all coherence cells are
/// identities in the strict ambient):
/// `(ω∗i_q) ⊙ (i_{f¹}∗λ¹) = (i_{f²}∗λ²) ⊙ (λ∗i_v)`.
fn cone_eq_holds(
    b: &FinBicategory,
    inp: &AbcInput,
    lam: CellId,
    v: OneId,
    q: OneId,
    lam1: CellId,
    lam2: CellId,
) -> bool {
    let run = || -> Result<bool> {
        let lhs = b.vchain(&[b.wl(inp.f1, lam1)?, b.wr(inp.omega, q)?])?;
        let rhs = b.vchain(&[b.wr(lam, v)?, b.wl(inp.f2, lam2)?])?;
        Ok(lhs == rhs)
    };
    run().unwrap_or(false)
}

/// Premise of condition (b):
/// `(ω∗i_{t′}) ⊙ (i_{f¹}∗γ¹) = (i_{f²}∗γ²) ⊙ (ω∗i_t)`.
fn pair_premise_holds(
    b: &FinBicategory,
    inp: &AbcInput,
    t: OneId,
    tp: OneId,
    g1: CellId,
    g2: CellId,
) -> bool {
    let run = || -> Result<bool> {
        let lhs = b.vchain(&[b.wl(inp.f1, g1)?, b.wr(inp.omega, tp)?])?;
        let rhs = b.vchain(&[b.wr(inp.omega, t)?, b.wl(inp.f2, g2)?])?;
        Ok(lhs == rhs)
    };
    run().unwrap_or(false)
}

/// Completion equation of condition (b): `i_{p^m}∗γ = γ^m∗i_u` for m = 1, 2.
fn pair_completion_holds(
    b: &FinBicategory,
    inp: &AbcInput,
    g1: CellId,
    g2: CellId,
    u: OneId,
    gamma: CellId,
) -> bool {
    let run = || -> Result<bool> {
        Ok(b.wl(inp.p1, gamma)? == b.wr(g1, u)? && b.wl(inp.p2, gamma)? == b.wr(g2, u)?)
    };
    run().unwrap_or(false)
}

/// Comparison equation of condition (c):
/// `(i_{t′}∗μ) ⊙ (γ∗i_z) = (γ̃∗i_{z̃}) ⊙ (i_t∗μ)`.
fn completion_link_holds(
    b: &FinBicategory,
    t: OneId,
    tp: OneId,
    gamma: CellId,
    gamma_t: CellId,
    z: OneId,
    zt: OneId,
    mu: CellId,
) -> bool {
    let run = || -> Result<bool> {
        let lhs = b.vchain(&[b.wr(gamma, z)?, b.wl(tp, mu)?])?;
        let rhs = b.vchain(&[b.wl(t, mu)?, b.wr(gamma_t, zt)?])?;
        Ok(lhs == rhs)
    };
    run().unwrap_or(false)
}

/// Condition (a): every ambient cone `(D, q¹, q², λ)` over the cospan factors
/// through the candidate after restriction along some `v ∈ W`, compatibly
/// with ω.  Passes vacuously when no cone exists.
pub fn check_condition_a(b: &FinBicategory, w: &OneClass, inp: &AbcInput) -> Result<AbcCheck> {
    inp.validate(b)?;
    w.check_parent(b)?;
    for d in b.objects() {
        for q1 in b.hom1(d, b.one_src(inp.f1)) {
            for q2 in b.hom1(d, b.one_src(inp.f2)) {
                let lhs = b.c1(inp.f1, q1)?;
                let rhs = b.c1(inp.f2, q2)?;
                for lam in b.cells_between(lhs, rhs) {
                    if !b.is_invertible(lam) {
                        continue;
                    }
                    if !cone_witness_exists(b, w, inp, d, q1, q2, lam)? {
                        return Ok(AbcCheck::fail(format!(
                            "cone (D={}, q¹={}, q²={}, λ={}) has no factorization",
                            b.object_name(d),
                            b.one_name(q1),
                            b.one_name(q2),
                            b.cell_name(lam)
                        )));
                    }
                }
            }
        }
    }
    Ok(AbcCheck::ok())
}

fn cone_witness_exists(
    b: &FinBicategory,
    w: &OneClass,
    inp: &AbcInput,
    d: ObjId,
    q1: OneId,
    q2: OneId,
    lam: CellId,
) -> Result<bool> {
    for e in b.objects() {
        for v in b.hom1(e, d) {
            if !w.contains(v) {
                continue;
            }
            for q in b.hom1(e, inp.c) {
                let l1_src = b.c1(q1, v)?;
                let l1_tgt = b.c1(inp.p1, q)?;
                let l2_src = b.c1(q2, v)?;
                let l2_tgt = b.c1(inp.p2, q)?;
                for lam1 in b.cells_between(l1_src, l1_tgt) {
                    if !b.is_invertible(lam1) {
                        continue;
                    }
                    for lam2 in b.cells_between(l2_src, l2_tgt) {
                        if !b.is_invertible(lam2) {
                            continue;
                        }
                        if cone_eq_holds(b, inp, lam, v, q, lam1, lam2) {
                            return Ok(true);
                        }
                    }
                }
            }
        }
    }
    Ok(false)
}

/// All `(t, t′, γ¹, γ²)` instances satisfying the condition-(b) premise, in
/// lexicographic order.
fn pair_premises(
    b: &FinBicategory,
    inp: &AbcInput,
    d: ObjId,
) -> Result<Vec<(OneId, OneId, CellId, CellId)>> {
    let mut out = Vec::new();
    for t in b.hom1(d, inp.c) {
        for tp in b.hom1(d, inp.c) {
            let p1t = b.c1(inp.p1, t)?;
            let p1tp = b.c1(inp.p1, tp)?;
            let p2t = b.c1(inp.p2, t)?;
            let p2tp = b.c1(inp.p2, tp)?;
            for g1 in b.cells_between(p1t, p1tp) {
                if !b.is_invertible(g1) {
                    continue;
                }
                for g2 in b.cells_between(p2t, p2tp) {
                    if !b.is_invertible(g2) {
                        continue;
                    }
                    if pair_premise_holds(b, inp, t, tp, g1, g2) {
                        out.push((t, tp, g1, g2));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// All completions `(u ∈ W, γ invertible)` of a condition-(b) instance, in
/// lexicographic order.
fn pair_completions(
    b: &FinBicategory,
    w: &OneClass,
    inp: &AbcInput,
    d: ObjId,
    t: OneId,
    tp: OneId,
    g1: CellId,
    g2: CellId,
) -> Result<Vec<(OneId, CellId)>> {
    let mut out = Vec::new();
    for u in b.one_ids() {
        if !w.contains(u) || b.one_tgt(u) != d {
            continue;
        }
        let tu = b.c1(t, u)?;
        let tpu = b.c1(tp, u)?;
        for gamma in b.cells_between(tu, tpu) {
            if !b.is_invertible(gamma) {
                continue;
            }
            if pair_completion_holds(b, inp, g1, g2, u, gamma) {
                out.push((u, gamma));
            }
        }
    }
    Ok(out)
}

/// Condition (b): every pair of 1-cells into the apex whose leg composites
/// are identified compatibly with ω becomes identified after restriction
/// along some `u ∈ W`.
pub fn check_condition_b(b: &FinBicategory, w: &OneClass, inp: &AbcInput) -> Result<AbcCheck> {
    inp.validate(b)?;
    w.check_parent(b)?;
    for d in b.objects() {
        for (t, tp, g1, g2) in pair_premises(b, inp, d)? {
            if pair_completions(b, w, inp, d, t, tp, g1, g2)?.is_empty() {
                return Ok(AbcCheck::fail(format!(
                    "pair (D={}, t={}, t′={}, γ¹={}, γ²={}) has no completion",
                    b.object_name(d),
                    b.one_name(t),
                    b.one_name(tp),
                    b.cell_name(g1),
                    b.cell_name(g2)
                )));
            }
        }
    }
    Ok(AbcCheck::ok())
}

/// Condition (c): any two completions of the same condition-(b) instance
/// agree after a further common restriction `(G, z ∈ W, z̃, μ)`.
pub fn check_condition_c(b: &FinBicategory, w: &OneClass, inp: &AbcInput) -> Result<AbcCheck> {
    inp.validate(b)?;
    w.check_parent(b)?;
    for d in b.objects() {
        for (t, tp, g1, g2) in pair_premises(b, inp, d)? {
            let completions = pair_completions(b, w, inp, d, t, tp, g1, g2)?;
            for &(u, gamma) in &completions {
                for &(ut, gammat) in &completions {
                    if !completion_link_exists(b, w, t, tp, u, gamma, ut, gammat)? {
                        return Ok(AbcCheck::fail(format!(
                            "completions (u={}, γ={}) and (ũ={}, γ̃={}) of \
                             (D={}, t={}, t′={}) are unlinked",
                            b.one_name(u),
                            b.cell_name(gamma),
                            b.one_name(ut),
                            b.cell_name(gammat),
                            b.object_name(d),
                            b.one_name(t),
                            b.one_name(tp)
                        )));
                    }
                }
            }
        }
    }
    Ok(AbcCheck::ok())
}

fn completion_link_exists(
    b: &FinBicategory,
    w: &OneClass,
    t: OneId,
    tp: OneId,
    u: OneId,
    gamma: CellId,
    ut: OneId,
    gammat: CellId,
) -> Result<bool> {
    for g in b.objects() {
        for z in b.hom1(g, b.one_src(u)) {
            if !w.contains(z) {
                continue;
            }
            for zt in b.hom1(g, b.one_src(ut)) {
                let uz = b.c1(u, z)?;
                let utzt = b.c1(ut, zt)?;
                for mu in b.cells_between(uz, utzt) {
                    if !b.is_invertible(mu) {
                        continue;
                    }
                    if completion_link_holds(b, t, tp, gamma, gammat, z, zt, mu) {
                        return Ok(true);
                    }
                }
            }
        }
    }
    Ok(false)
}

/// Run all three condition checkers.
pub fn check_conditions(b: &FinBicategory, w: &OneClass, inp: &AbcInput) -> Result<AbcReport> {
    Ok(AbcReport {
        a: check_condition_a(b, w, inp)?,
        b: check_condition_b(b, w, inp)?,
        c: check_condition_c(b, w, inp)?,
    })
}

/// Every candidate square over the cospan `(f1, f2)`, in lexicographic order.
pub fn enumerate_candidates(
    b: &FinBicategory,
    f1: OneId,
    f2: OneId,
) -> Result<Vec<AbcInput>> {
    if b.one_tgt(f1) != b.one_tgt(f2) {
        return Err(Error::Precondition("cospan targets differ".into()));
    }
    let mut out = Vec::new();
    for c in b.objects() {
        for p1 in b.hom1(c, b.one_src(f1)) {
            for p2 in b.hom1(c, b.one_src(f2)) {
                let lhs = b.c1(f1, p1)?;
                let rhs = b.c1(f2, p2)?;
                for omega in b.cells_between(lhs, rhs) {
                    if b.is_invertible(omega) {
                        out.push(AbcInput {
                            f1,
                            f2,
                            c,
                            p1,
                            p2,
                            omega,
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Lift the candidate to the localized bicategory: cospan
/// `(B^m, id, f^m)`, legs `(C, id, p^m)`, and the 2-cell class of
/// `[C, id_C, id_C, i_{id_C}, ω∗i_{id_C}]`.
pub fn build_unit_diagram(
    b: &FinBicategory,
    inp: &AbcInput,
    loc: &Localization,
) -> Result<WfpSquare> {
    inp.validate(b)?;
    let idc = b.id1(inp.c);
    let triple = |apex: ObjId, wleg: OneId, fleg: OneId| TripleMor {
        apex,
        w: wleg,
        f: fleg,
    };
    let lk = |t: &TripleMor| -> Result<OneId> {
        loc.one_of(t)
            .ok_or_else(|| Error::Precondition("triple absent from localization".into()))
    };
    let b1 = b.one_src(inp.f1);
    let b2 = b.one_src(inp.f2);
    let g1 = lk(&triple(b1, b.id1(b1), inp.f1))?;
    let g2 = lk(&triple(b2, b.id1(b2), inp.f2))?;
    let r1 = lk(&triple(inp.c, idc, inp.p1))?;
    let r2 = lk(&triple(inp.c, idc, inp.p2))?;
    let t1 = lk(&triple(inp.c, idc, b.c1(inp.f1, inp.p1)?))?;
    let t2 = lk(&triple(inp.c, idc, b.c1(inp.f2, inp.p2)?))?;
    let rep = QuintupleRep {
        apex: inp.c,
        v1: idc,
        v2: idc,
        alpha: b.id2(idc),
        beta: b.wr(inp.omega, idc)?,
    };
    let omega = loc
        .class_of(t1, t2, &rep)
        .ok_or_else(|| Error::Defect("unit-square 2-cell not classified".into()))?;
    Ok(WfpSquare {
        g1,
        g2,
        r1,
        r2,
        omega,
    })
}

/// Modify a known-good unit square into a square over the cospan
/// `((B¹,w¹,f¹), (B²,w²,f²))` for arbitrary `w^m ∈ W` out of the `B^m`.
/// The auxiliary data — one restriction `(u^m, τ^m)` per side compatible
/// with the chosen square `σ^m` for `(w^m∘p^m, w^m)`, and a common
/// restriction `(z¹, z², μ)` identifying the resulting W-legs — exist under
/// the axioms, so failed searches are engine defects.
pub fn build_general_wfp(
    b: &FinBicategory,
    w: &OneClass,
    inp: &AbcInput,
    w1: OneId,
    w2: OneId,
    choices: &ChoiceTable,
    loc: &Localization,
) -> Result<WfpSquare> {
    inp.validate(b)?;
    w.check_parent(b)?;
    let b1 = b.one_src(inp.f1);
    let b2 = b.one_src(inp.f2);
    if !w.contains(w1) || !w.contains(w2) || b.one_src(w1) != b1 || b.one_src(w2) != b2 {
        return Err(Error::Precondition(
            "w-legs must be in W and start at the cospan feet".into(),
        ));
    }
    let idc = b.id1(inp.c);
    let wp1 = b.c1(w1, inp.p1)?;
    let wp2 = b.c1(w2, inp.p2)?;
    let fcos1 = TripleMor {
        apex: b1,
        w: w1,
        f: inp.f1,
    };
    let fcos2 = TripleMor {
        apex: b2,
        w: w2,
        f: inp.f2,
    };
    let leg1 = TripleMor {
        apex: inp.c,
        w: idc,
        f: wp1,
    };
    let leg2 = TripleMor {
        apex: inp.c,
        w: idc,
        f: wp2,
    };
    let lk = |t: &TripleMor| -> Result<OneId> {
        loc.one_of(t)
            .ok_or_else(|| Error::Precondition("triple absent from localization".into()))
    };
    // Chosen squares σ^m for (w^m∘p^m, w^m), fixing the composite triples.
    let e1 = *choices.get(wp1, w1)?;
    let e2 = *choices.get(wp2, w2)?;
    // One restriction (u^m, τ^m) per side with i_{w^m}∗τ^m = σ^m∗i_{u^m}.
    let side = |wm: OneId,
                pm: OneId,
                em: &crate::bf_fractions::ChoiceEntry|
     -> Result<(OneId, CellId)> {
        for u in b.one_ids() {
            if !w.contains(u) || b.one_tgt(u) != em.apex {
                continue;
            }
            let src = b.c1(b.c1(pm, em.v_prime)?, u)?;
            let tgt = b.c1(em.f_prime, u)?;
            for tau in b.cells_between(src, tgt) {
                if !b.is_invertible(tau) {
                    continue;
                }
                if b.wl(wm, tau)? == b.wr(em.rho, u)? {
                    return Ok((u, tau));
                }
            }
        }
        Err(Error::Defect("side restriction vanished".into()))
    };
    let (u1, tau1) = side(w1, inp.p1, &e1)?;
    let (u2, tau2) = side(w2, inp.p2, &e2)?;
    // Common restriction (z¹ ∈ W, z², μ) identifying the two W-legs.
    let mut found: Option<(OneId, OneId, CellId)> = None;
    'outer: for z1 in b.one_ids() {
        if !w.contains(z1) || b.one_tgt(z1) != b.one_src(u1) {
            continue;
        }
        for z2 in b.one_ids() {
            if b.one_tgt(z2) != b.one_src(u2) || b.one_src(z2) != b.one_src(z1) {
                continue;
            }
            let lhs = b.c1(e1.v_prime, b.c1(u1, z1)?)?;
            let rhs = b.c1(e2.v_prime, b.c1(u2, z2)?)?;
            for mu in b.cells_between(lhs, rhs) {
                if b.is_invertible(mu) {
                    found = Some((z1, z2, mu));
                    break 'outer;
                }
            }
        }
    }
    let (z1, z2, mu) =
        found.ok_or_else(|| Error::Defect("common restriction vanished".into()))?;
    let u1z1 = b.c1(u1, z1)?;
    let u2z2 = b.c1(u2, z2)?;
    // δ := (i_{f²}∗(τ²∗i_{z²})) ⊙ (ω∗i_{v²∘u²∘z²}) ⊙ (i_{f¹∘p¹}∗μ)
    //      ⊙ (i_{f¹}∗((τ¹)⁻¹∗i_{z¹})).
    let tau1_inv = b
        .inverse(tau1)
        .ok_or_else(|| Error::Defect("restriction cell not invertible".into()))?;
    let v2tail = b.c1(e2.v_prime, u2z2)?;
    let delta = b.vchain(&[
        b.wl(inp.f1, b.wr(tau1_inv, z1)?)?,
        b.wl(b.c1(inp.f1, inp.p1)?, mu)?,
        b.wr(inp.omega, v2tail)?,
        b.wl(inp.f2, b.wr(tau2, z2)?)?,
    ])?;
    let comp1 = compose_triples(b, choices, &fcos1, &leg1)?;
    let comp2 = compose_triples(b, choices, &fcos2, &leg2)?;
    let rep = QuintupleRep {
        apex: b.one_src(z1),
        v1: u1z1,
        v2: u2z2,
        alpha: mu,
        beta: delta,
    };
    let omega = loc
        .class_of(lk(&comp1)?, lk(&comp2)?, &rep)
        .ok_or_else(|| Error::Defect("general-square 2-cell not classified".into()))?;
    Ok(WfpSquare {
        g1: lk(&fcos1)?,
        g2: lk(&fcos2)?,
        r1: lk(&leg1)?,
        r2: lk(&leg2)?,
        omega,
    })
}

/// Does the cospan `(g1, g2)` of a (localized) bicategory admit *some* weak
/// fiber product?  Exhaustive search over apexes, legs, and invertible Ω.
pub fn wfp_exists(b: &FinBicategory, g1: OneId, g2: OneId) -> Result<bool> {
    for inp in enumerate_candidates(b, g1, g2)? {
        let sq = WfpSquare {
            g1,
            g2,
            r1: inp.p1,
            r2: inp.p2,
            omega: inp.omega,
        };
        if is_weak_fiber_product(b, &sq)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Outcome of one cross-checked property.
#[derive(Clone, Debug)]
pub struct PropertyResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Machine-readable report of [`verify_theorem_suite`].
#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub fixture: String,
    pub properties: Vec<PropertyResult>,
}

impl TheoremReport {
    pub fn all_pass(&self) -> bool {
        self.properties.iter().all(|p| p.pass)
    }
}

/// Everything needed to run the theorem cross-checks on one fixture.
pub struct TheoremContext {
    pub name: String,
    /// Underlying category and class for trivially-promoted fixtures.
    pub cat: Option<(FinCategory, MorClass)>,
    pub ambient: FinBicategory,
    pub w: OneClass,
    pub choices: ChoiceTable,
    pub loc: Localization,
}

/// Registered fixture ids accepted by [`theorem_context_for`].
pub const FIXTURES: &[&str] = &[
    "arrow",
    "arrow-ext",
    "diamond-trivial",
    "diamond-w",
    "double-diamond",
    "parallel",
    "fork",
    "z2grp",
    "loop-z2",
];

/// Build the ambient, class, choice table, and localization for a fixture id.
pub fn theorem_context_for(fixture: &str) -> Result<TheoremContext> {
    let trivial = |c: FinCategory, w: MorClass| -> Result<TheoremContext> {
        let b = FinBicategory::from_trivial(&c);
        let wc = OneClass::from_mor_class(&c, &b, &w)?;
        let choices = build_choice_table(&b, &wc, ChoicePolicy::C3)?;
        let loc = localize_bicategory(&b, &wc, &choices, &SizeCaps::default())?;
        Ok(TheoremContext {
            name: fixture.to_string(),
            cat: Some((c, w)),
            ambient: b,
            w: wc,
            choices,
            loc,
        })
    };
    match fixture {
        "arrow" => {
            let c = fincat::arrow();
            let w = fincat::arrow_w(&c);
            trivial(c, w)
        }
        "arrow-ext" => {
            let c = fincat::arrow_ext();
            let w = fincat::arrow_ext_w(&c);
            trivial(c, w)
        }
        "diamond-trivial" => {
            let c = fincat::diamond();
            let w = MorClass::identities(&c);
            trivial(c, w)
        }
        "diamond-w" => {
            let c = fincat::diamond();
            let w = fincat::diamond_w(&c);
            trivial(c, w)
        }
        "double-diamond" => {
            let c = fincat::double_diamond();
            let w = MorClass::identities(&c);
            trivial(c, w)
        }
        "parallel" => {
            let c = fincat::parallel();
            let w = MorClass::identities(&c);
            trivial(c, w)
        }
        "fork" => {
            let c = fincat::fork();
            let w = MorClass::identities(&c);
            trivial(c, w)
        }
        "z2grp" => {
            let c = fincat::z2grp();
            let w = MorClass::all(&c);
            trivial(c, w)
        }
        "loop-z2" => {
            let b = loop_z2();
            let wc = OneClass::identities(&b);
            let choices = build_choice_table(&b, &wc, ChoicePolicy::C3)?;
            let loc = localize_bicategory(&b, &wc, &choices, &SizeCaps::default())?;
            Ok(TheoremContext {
                name: fixture.to_string(),
                cat: None,
                ambient: b,
                w: wc,
                choices,
                loc,
            })
        }
        other => Err(Error::UnknownFixture(other.to_string())),
    }
}

fn cospans(b: &FinBicategory) -> Vec<(OneId, OneId)> {
    let mut out = Vec::new();
    for f1 in b.one_ids() {
        for f2 in b.one_ids() {
            if b.one_tgt(f1) == b.one_tgt(f2) {
                out.push((f1, f2));
            }
        }
    }
    out
}

/// Headline equivalence: for every cospan and every candidate, the
/// conjunction (a) ∧ (b) ∧ (c) agrees with the localized-side weak fiber
/// product verdict on the lifted unit square — both sides computed
/// independently.
pub fn property_abc_iff_localized_wfp(ctx: &TheoremContext) -> Result<PropertyResult> {
    let b = &ctx.ambient;
    let mut checked = 0usize;
    for (f1, f2) in cospans(b) {
        for inp in enumerate_candidates(b, f1, f2)? {
            let abc = check_conditions(b, &ctx.w, &inp)?.all_pass();
            let sq = build_unit_diagram(b, &inp, &ctx.loc)?;
            let wfp = is_weak_fiber_product(&ctx.loc.bicat, &sq)?;
            if abc != wfp {
                return Ok(PropertyResult {
                    name: "abc-iff-localized-wfp".into(),
                    pass: false,
                    detail: format!(
                        "candidate (C={}, p¹={}, p²={}) over ({}, {}): conditions {} but \
                         localized verdict {}",
                        b.object_name(inp.c),
                        b.one_name(inp.p1),
                        b.one_name(inp.p2),
                        b.one_name(f1),
                        b.one_name(f2),
                        abc,
                        wfp
                    ),
                });
            }
            checked += 1;
        }
    }
    Ok(PropertyResult {
        name: "abc-iff-localized-wfp".into(),
        pass: true,
        detail: format!("{checked} candidates agree"),
    })
}

/// Closure under localization: an ambient weak fiber product always passes
/// conditions (a)/(b)/(c).
pub fn property_ambient_wfp_implies_abc(ctx: &TheoremContext) -> Result<PropertyResult> {
    let b = &ctx.ambient;
    let mut checked = 0usize;
    for (f1, f2) in cospans(b) {
        for inp in enumerate_candidates(b, f1, f2)? {
            let sq = WfpSquare {
                g1: f1,
                g2: f2,
                r1: inp.p1,
                r2: inp.p2,
                omega: inp.omega,
            };
            if !is_weak_fiber_product(b, &sq)? {
                continue;
            }
            let abc = check_conditions(b, &ctx.w, &inp)?;
            if !abc.all_pass() {
                return Ok(PropertyResult {
                    name: "ambient-wfp-implies-abc".into(),
                    pass: false,
                    detail: format!(
                        "ambient square (C={}, p¹={}, p²={}) over ({}, {}) fails conditions",
                        b.object_name(inp.c),
                        b.one_name(inp.p1),
                        b.one_name(inp.p2),
                        b.one_name(f1),
                        b.one_name(f2)
                    ),
                });
            }
            checked += 1;
        }
    }
    Ok(PropertyResult {
        name: "ambient-wfp-implies-abc".into(),
        pass: true,
        detail: format!("{checked} ambient squares closed"),
    })
}

/// The general-square builder: whenever the unit square is a weak fiber
/// product, so is the modified square, for every pair of W-legs.
pub fn property_general_square_wfp(ctx: &TheoremContext) -> Result<PropertyResult> {
    let b = &ctx.ambient;
    let mut checked = 0usize;
    for (f1, f2) in cospans(b) {
        for inp in enumerate_candidates(b, f1, f2)? {
            let unit = build_unit_diagram(b, &inp, &ctx.loc)?;
            if !is_weak_fiber_product(&ctx.loc.bicat, &unit)? {
                continue;
            }
            for w1 in b.one_ids() {
                if !ctx.w.contains(w1) || b.one_src(w1) != b.one_src(f1) {
                    continue;
                }
                for w2 in b.one_ids() {
                    if !ctx.w.contains(w2) || b.one_src(w2) != b.one_src(f2) {
                        continue;
                    }
                    let sq =
                        build_general_wfp(b, &ctx.w, &inp, w1, w2, &ctx.choices, &ctx.loc)?;
                    if !is_weak_fiber_product(&ctx.loc.bicat, &sq)? {
                        return Ok(PropertyResult {
                            name: "general-square-wfp".into(),
                            pass: false,
                            detail: format!(
                                "general square for (C={}, w¹={}, w²={}) over ({}, {}) \
                                 is not a weak fiber product",
                                b.object_name(inp.c),
                                b.one_name(w1),
                                b.one_name(w2),
                                b.one_name(f1),
                                b.one_name(f2)
                            ),
                        });
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(PropertyResult {
        name: "general-square-wfp".into(),
        pass: true,
        detail: format!("{checked} general squares verified"),
    })
}

/// Existence equivalence: some candidate lifts to a localized weak fiber
/// product exactly when every W-shifted cospan admits one (decided by
/// exhaustive search in the localization).
pub fn property_unit_square_iff_cospan_wfp(ctx: &TheoremContext) -> Result<PropertyResult> {
    let b = &ctx.ambient;
    let mut checked = 0usize;
    for (f1, f2) in cospans(b) {
        let mut side_ii = false;
        for inp in enumerate_candidates(b, f1, f2)? {
            let sq = build_unit_diagram(b, &inp, &ctx.loc)?;
            if is_weak_fiber_product(&ctx.loc.bicat, &sq)? {
                side_ii = true;
                break;
            }
        }
        let mut side_i = true;
        'shift: for w1 in b.one_ids() {
            if !ctx.w.contains(w1) || b.one_src(w1) != b.one_src(f1) {
                continue;
            }
            for w2 in b.one_ids() {
                if !ctx.w.contains(w2) || b.one_src(w2) != b.one_src(f2) {
                    continue;
                }
                let g1 = ctx
                    .loc
                    .one_of(&TripleMor {
                        apex: b.one_src(f1),
                        w: w1,
                        f: f1,
                    })
                    .ok_or_else(|| Error::Defect("cospan triple missing".into()))?;
                let g2 = ctx
                    .loc
                    .one_of(&TripleMor {
                        apex: b.one_src(f2),
                        w: w2,
                        f: f2,
                    })
                    .ok_or_else(|| Error::Defect("cospan triple missing".into()))?;
                if !wfp_exists(&ctx.loc.bicat, g1, g2)? {
                    side_i = false;
                    break 'shift;
                }
            }
        }
        if side_i != side_ii {
            return Ok(PropertyResult {
                name: "unit-square-iff-cospan-wfp".into(),
                pass: false,
                detail: format!(
                    "cospan ({}, {}): shifted existence {} but candidate existence {}",
                    b.one_name(f1),
                    b.one_name(f2),
                    side_i,
                    side_ii
                ),
            });
        }
        checked += 1;
    }
    Ok(PropertyResult {
        name: "unit-square-iff-cospan-wfp".into(),
        pass: true,
        detail: format!("{checked} cospans agree"),
    })
}

/// One-categorical degeneration: on trivially-promoted fixtures, the
/// conjunction (a) ∧ (b) ∧ (c) coincides with the strong-fiber-product
/// conditions (d) ∧ (e) of the span calculus, and (c) holds automatically.
pub fn property_strong_pullback_degeneration(ctx: &TheoremContext) -> Result<PropertyResult> {
    let (c, wm) = ctx
        .cat
        .as_ref()
        .ok_or_else(|| Error::Precondition("fixture is not trivially promoted".into()))?;
    let b = &ctx.ambient;
    let mut checked = 0usize;
    for (f1, f2) in cospans(b) {
        for inp in enumerate_candidates(b, f1, f2)? {
            let abc = check_conditions(b, &ctx.w, &inp)?;
            if !abc.c.pass {
                return Ok(PropertyResult {
                    name: "strong-pullback-degeneration".into(),
                    pass: false,
                    detail: "condition (c) not automatic on a trivial promotion".into(),
                });
            }
            let strong = cf_fractions::is_strong_fraction_pullback(
                c,
                wm,
                MorId(f1.0),
                MorId(f2.0),
                (inp.c, MorId(inp.p1.0), MorId(inp.p2.0)),
            )?;
            if strong != abc.all_pass() {
                return Ok(PropertyResult {
                    name: "strong-pullback-degeneration".into(),
                    pass: false,
                    detail: format!(
                        "candidate (C={}, p¹={}, p²={}) over ({}, {}): span verdict {} vs \
                         conditions {}",
                        b.object_name(inp.c),
                        b.one_name(inp.p1),
                        b.one_name(inp.p2),
                        b.one_name(f1),
                        b.one_name(f2),
                        strong,
                        abc.all_pass()
                    ),
                });
            }
            checked += 1;
        }
    }
    Ok(PropertyResult {
        name: "strong-pullback-degeneration".into(),
        pass: true,
        detail: format!("{checked} candidates agree with the span calculus"),
    })
}

/// Run the registered cross-checks for one fixture.
pub fn verify_theorem_suite(fixture: &str) -> Result<TheoremReport> {
    let ctx = theorem_context_for(fixture)?;
    let report = check_bf_axioms(&ctx.ambient, &ctx.w)?;
    if !report.all_pass() {
        return Err(Error::BfViolation(format!(
            "fixture {fixture} does not satisfy the fraction axioms"
        )));
    }
    let mut properties = vec![
        property_abc_iff_localized_wfp(&ctx)?,
        property_ambient_wfp_implies_abc(&ctx)?,
    ];
    if ctx.cat.is_some() {
        properties.push(property_strong_pullback_degeneration(&ctx)?);
    }
    // The heavier existence searches run only on the small localizations.
    if matches!(fixture, "arrow" | "arrow-ext" | "diamond-w" | "z2grp" | "loop-z2") {
        properties.push(property_general_square_wfp(&ctx)?);
        properties.push(property_unit_square_iff_cospan_wfp(&ctx)?);
    }
    Ok(TheoremReport {
        fixture: fixture.to_string(),
        properties,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trivial_ctx(fixture: &str) -> TheoremContext {
        theorem_context_for(fixture).unwrap()
    }

    fn identity_candidate(b: &FinBicategory, f1: OneId, f2: OneId, c: ObjId) -> AbcInput {
        let p1 = b.id1(c);
        AbcInput {
            f1,
            f2,
            c,
            p1,
            p2: p1,
            omega: b.id2(b.c1(f1, p1).unwrap()),
        }
    }

    #[test]
    fn diamond_meet_candidate_passes_conditions() {
        let ctx = trivial_ctx("diamond-trivial");
        let b = &ctx.ambient;
        let inp = AbcInput {
            f1: b.one_by_name("b1a").unwrap(),
            f2: b.one_by_name("b2a").unwrap(),
            c: b.obj_by_name("c").unwrap(),
            p1: b.one_by_name("cb1").unwrap(),
            p2: b.one_by_name("cb2").unwrap(),
            omega: b.id2(b.one_by_name("ca").unwrap()),
        };
        let report = check_conditions(b, &ctx.w, &inp).unwrap();
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn double_diamond_candidate_fails_cone_condition_at_other_apex() {
        let ctx = trivial_ctx("double-diamond");
        let b = &ctx.ambient;
        let inp = AbcInput {
            f1: b.one_by_name("b1a").unwrap(),
            f2: b.one_by_name("b2a").unwrap(),
            c: b.obj_by_name("c1").unwrap(),
            p1: b.one_by_name("c1b1").unwrap(),
            p2: b.one_by_name("c1b2").unwrap(),
            omega: b.id2(b.one_by_name("c1a").unwrap()),
        };
        let a = check_condition_a(b, &ctx.w, &inp).unwrap();
        assert!(!a.pass);
        assert!(a.witness.unwrap().contains("D=c2"));
    }

    #[test]
    fn fork_cone_condition_fails_on_equalized_pair() {
        let ctx = trivial_ctx("fork");
        let b = &ctx.ambient;
        let cc = b.one_by_name("c").unwrap();
        let q = b.obj_by_name("Q").unwrap();
        let inp = identity_candidate(b, cc, cc, q);
        let a = check_condition_a(b, &ctx.w, &inp).unwrap();
        assert!(!a.pass, "cone (a, b) cannot factor through the identity");
    }

    #[test]
    fn fork_pair_condition_fails_behind_non_mono_leg() {
        let ctx = trivial_ctx("fork");
        let b = &ctx.ambient;
        let idr = b.id1(b.obj_by_name("R").unwrap());
        let cc = b.one_by_name("c").unwrap();
        let inp = AbcInput {
            f1: idr,
            f2: idr,
            c: b.obj_by_name("Q").unwrap(),
            p1: cc,
            p2: cc,
            omega: b.id2(cc),
        };
        let report = check_conditions(b, &ctx.w, &inp).unwrap();
        assert!(!report.b.pass);
        assert!(report.b.witness.unwrap().contains("t=a"));
    }

    #[test]
    fn condition_c_automatic_on_trivial_fixtures() {
        for fixture in ["arrow", "diamond-w", "double-diamond", "fork"] {
            let ctx = trivial_ctx(fixture);
            let b = &ctx.ambient;
            for (f1, f2) in cospans(b) {
                for inp in enumerate_candidates(b, f1, f2).unwrap() {
                    assert!(
                        check_condition_c(b, &ctx.w, &inp).unwrap().pass,
                        "{fixture}"
                    );
                }
            }
        }
    }

    #[test]
    fn unit_diagram_with_identity_omega_is_identity_class() {
        let ctx = trivial_ctx("diamond-trivial");
        let b = &ctx.ambient;
        let inp = AbcInput {
            f1: b.one_by_name("b1a").unwrap(),
            f2: b.one_by_name("b2a").unwrap(),
            c: b.obj_by_name("c").unwrap(),
            p1: b.one_by_name("cb1").unwrap(),
            p2: b.one_by_name("cb2").unwrap(),
            omega: b.id2(b.one_by_name("ca").unwrap()),
        };
        let sq = build_unit_diagram(b, &inp, &ctx.loc).unwrap();
        let src = ctx.loc.bicat.cell_src(sq.omega);
        assert_eq!(sq.omega, ctx.loc.bicat.id2(src));
        assert!(is_weak_fiber_product(&ctx.loc.bicat, &sq).unwrap());
    }

    #[test]
    fn general_square_collapses_to_unit_square_for_identity_legs() {
        let ctx = trivial_ctx("arrow");
        let b = &ctx.ambient;
        let ww = b.one_by_name("w").unwrap();
        let x = b.obj_by_name("X").unwrap();
        let inp = identity_candidate(b, ww, ww, x);
        let unit = build_unit_diagram(b, &inp, &ctx.loc).unwrap();
        assert!(is_weak_fiber_product(&ctx.loc.bicat, &unit).unwrap());
        let idx = b.id1(x);
        let sq =
            build_general_wfp(b, &ctx.w, &inp, idx, idx, &ctx.choices, &ctx.loc).unwrap();
        assert_eq!(sq.g1, unit.g1);
        assert_eq!(sq.r1, unit.r1);
        assert_eq!(sq.r2, unit.r2);
        assert_eq!(sq.omega, unit.omega);
    }

    #[test]
    fn general_square_with_inverted_legs_is_wfp() {
        let ctx = trivial_ctx("arrow");
        let b = &ctx.ambient;
        let ww = b.one_by_name("w").unwrap();
        let x = b.obj_by_name("X").unwrap();
        let inp = identity_candidate(b, ww, ww, x);
        let sq = build_general_wfp(b, &ctx.w, &inp, ww, ww, &ctx.choices, &ctx.loc).unwrap();
        assert!(is_weak_fiber_product(&ctx.loc.bicat, &sq).unwrap());
    }

    #[test]
    fn theorem_suite_diamond_trivial_passes() {
        let report = verify_theorem_suite("diamond-trivial").unwrap();
        assert!(report.all_pass(), "{:?}", report.properties);
    }

    #[test]
    fn theorem_suite_double_diamond_passes_with_both_sides_false() {
        let report = verify_theorem_suite("double-diamond").unwrap();
        assert!(report.all_pass(), "{:?}", report.properties);
        // The headline equivalence was exercised on candidates where both
        // sides are false (no meet exists for the double cospan).
        let ctx = trivial_ctx("double-diamond");
        let b = &ctx.ambient;
        let inp = AbcInput {
            f1: b.one_by_name("b1a").unwrap(),
            f2: b.one_by_name("b2a").unwrap(),
            c: b.obj_by_name("c1").unwrap(),
            p1: b.one_by_name("c1b1").unwrap(),
            p2: b.one_by_name("c1b2").unwrap(),
            omega: b.id2(b.one_by_name("c1a").unwrap()),
        };
        assert!(!check_conditions(b, &ctx.w, &inp).unwrap().all_pass());
        let sq = build_unit_diagram(b, &inp, &ctx.loc).unwrap();
        assert!(!is_weak_fiber_product(&ctx.loc.bicat, &sq).unwrap());
    }

    #[test]
    fn theorem_suite_arrow_passes() {
        let report = verify_theorem_suite("arrow").unwrap();
        assert!(report.all_pass(), "{:?}", report.properties);
    }

    #[test]
    fn theorem_suite_loop_z2_passes() {
        let report = verify_theorem_suite("loop-z2").unwrap();
        assert!(report.all_pass(), "{:?}", report.properties);
    }

    #[test]
    fn unknown_fixture_is_an_error() {
        assert!(matches!(
            verify_theorem_suite("no-such-fixture"),
            Err(Error::UnknownFixture(_))
        ));
    }
}
