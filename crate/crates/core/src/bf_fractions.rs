//! Right bicalculus of fractions on a finite strict 2-category.
//!
//! Provides the five-axiom checker (with the BF4 sub-conditions split out),
//! the normalized choice table that fixes all square completions, and the
//! concrete localized bicategory whose 1-cells are triples `(A′, w, f)` and
//! whose 2-cells are equivalence classes of quintuples
//! `(A³, v¹, v², α, β)`.
//!
//! The input ambient is required to be strict, so all ambient associators and
//! unitors are identities and the coherence insertions in the defining
//! equations collapse; the *output* localized bicategory is genuinely
//! non-strict and carries explicit (computed) associator tables.

use std::collections::HashMap;

use crate::bicat::{
    BicatParts, CellData, CellId, FinBicategory, OneData, OneId, SizeCaps,
};
use crate::fincat::{FinCategory, MorClass, ObjId};
use crate::{Error, Result};

/// A class of 1-cells of a finite bicategory, as a membership table.
#[derive(Clone, Debug)]
pub struct OneClass {
    members: Vec<bool>,
}

impl OneClass {
    pub fn new(b: &FinBicategory, members: Vec<OneId>) -> Self {
        let mut v = vec![false; b.n_ones()];
        for m in members {
            v[m.0 as usize] = true;
        }
        OneClass { members: v }
    }

    /// Only the identity 1-cells.
    pub fn identities(b: &FinBicategory) -> Self {
        OneClass::new(b, b.objects().map(|a| b.id1(a)).collect())
    }

    /// Every 1-cell.
    pub fn all(b: &FinBicategory) -> Self {
        OneClass {
            members: vec![true; b.n_ones()],
        }
    }

    /// Transfer a morphism class of a category to the 1-cells of its trivial
    /// promotion (morphism ordinals and 1-cell ordinals coincide there).
    pub fn from_mor_class(c: &FinCategory, b: &FinBicategory, w: &MorClass) -> Result<Self> {
        w.check_parent(c)?;
        if b.n_ones() != c.n_mors() {
            return Err(Error::Precondition(
                "bicategory is not the trivial promotion of the category".into(),
            ));
        }
        Ok(OneClass {
            members: b.one_ids().map(|f| w.contains(crate::fincat::MorId(f.0))).collect(),
        })
    }

    pub fn contains(&self, f: OneId) -> bool {
        self.members[f.0 as usize]
    }

    pub fn check_parent(&self, b: &FinBicategory) -> Result<()> {
        if self.members.len() != b.n_ones() {
            return Err(Error::Structure("class size does not match bicategory".into()));
        }
        Ok(())
    }
}

/// Verdict for a single axiom: pass, or the first counterexample found.
#[derive(Clone, Debug)]
pub struct BfAxiom {
    pub pass: bool,
    pub witness: Option<String>,
}

impl BfAxiom {
    fn ok() -> Self {
        BfAxiom {
            pass: true,
            witness: None,
        }
    }
    fn fail(witness: String) -> Self {
        BfAxiom {
            pass: false,
            witness: Some(witness),
        }
    }
}

/// Result of [`check_bf_axioms`], one verdict per axiom with BF4 split into
/// its three sub-conditions.
#[derive(Clone, Debug)]
pub struct BfReport {
    pub bf1: BfAxiom,
    pub bf2: BfAxiom,
    pub bf3: BfAxiom,
    pub bf4a: BfAxiom,
    pub bf4b: BfAxiom,
    pub bf4c: BfAxiom,
    pub bf5: BfAxiom,
}

impl BfReport {
    pub fn all_pass(&self) -> bool {
        self.bf1.pass
            && self.bf2.pass
            && self.bf3.pass
            && self.bf4a.pass
            && self.bf4b.pass
            && self.bf4c.pass
            && self.bf5.pass
    }
}

/// Compose 1-cells right-to-left: `cc(b, &[h, g, f])` is `h∘(g∘f)`.
fn cc(b: &FinBicategory, parts: &[OneId]) -> Result<OneId> {
    let mut it = parts.iter().rev();
    let mut acc = *it
        .next()
        .ok_or_else(|| Error::Precondition("empty 1-cell chain".into()))?;
    for &next in it {
        acc = b.c1(next, acc)?;
    }
    Ok(acc)
}

/// Lexicographically least square completion for `w0 ∈ W` and `f0` into the
/// same target: `(D, w′ ∈ W, f′, ε)` with `ε: f0∘w′ ⇒ w0∘f′` invertible.
pub fn bf3_witness(
    b: &FinBicategory,
    w: &OneClass,
    w0: OneId,
    f0: OneId,
) -> Option<(ObjId, OneId, OneId, CellId)> {
    if b.one_tgt(w0) != b.one_tgt(f0) {
        return None;
    }
    for d in b.objects() {
        for wp in b.hom1(d, b.one_src(f0)) {
            if !w.contains(wp) {
                continue;
            }
            for fp in b.hom1(d, b.one_src(w0)) {
                let lhs = b.c1(f0, wp).ok()?;
                let rhs = b.c1(w0, fp).ok()?;
                for eps in b.cells_between(lhs, rhs) {
                    if b.is_invertible(eps) {
                        return Some((d, wp, fp, eps));
                    }
                }
            }
        }
    }
    None
}

/// Lexicographically least right-cancellation witness for `w0 ∈ W` and
/// `α: w0∘f1 ⇒ w0∘f2`: a pair `(v ∈ W, β: f1∘v ⇒ f2∘v)` with
/// `α∗i_v = i_{w0}∗β`; `β` invertible whenever `α` is.
pub fn bf4_witness(
    b: &FinBicategory,
    w: &OneClass,
    w0: OneId,
    f1: OneId,
    f2: OneId,
    alpha: CellId,
) -> Option<(OneId, CellId)> {
    let need_inv = b.is_invertible(alpha);
    for v in b.one_ids() {
        if !w.contains(v) || b.one_tgt(v) != b.one_src(f1) {
            continue;
        }
        let lhs = b.c1(f1, v).ok()?;
        let rhs = b.c1(f2, v).ok()?;
        let av = b.wr(alpha, v).ok()?;
        for beta in b.cells_between(lhs, rhs) {
            if need_inv && !b.is_invertible(beta) {
                continue;
            }
            if b.wl(w0, beta).ok() == Some(av) {
                return Some((v, beta));
            }
        }
    }
    None
}

/// Decide the axioms for a right bicalculus of fractions by exhaustive
/// search over the (strict) ambient.
pub fn check_bf_axioms(b: &FinBicategory, w: &OneClass) -> Result<BfReport> {
    if !b.strict {
        return Err(Error::Precondition("ambient bicategory must be strict".into()));
    }
    w.check_parent(b)?;

    let bf1 = b
        .objects()
        .find(|&a| !w.contains(b.id1(a)))
        .map(|a| BfAxiom::fail(format!("id of `{}` not in W", b.object_name(a))))
        .unwrap_or_else(BfAxiom::ok);

    let mut bf2 = BfAxiom::ok();
    'bf2: for v2 in b.one_ids() {
        for v1 in b.one_ids() {
            if !w.contains(v2) || !w.contains(v1) || b.one_tgt(v1) != b.one_src(v2) {
                continue;
            }
            if !w.contains(b.c1(v2, v1)?) {
                bf2 = BfAxiom::fail(format!("{}∘{} not in W", b.one_name(v2), b.one_name(v1)));
                break 'bf2;
            }
        }
    }

    let mut bf3 = BfAxiom::ok();
    'bf3: for w0 in b.one_ids() {
        if !w.contains(w0) {
            continue;
        }
        for f0 in b.one_ids() {
            if b.one_tgt(f0) != b.one_tgt(w0) {
                continue;
            }
            if bf3_witness(b, w, w0, f0).is_none() {
                bf3 = BfAxiom::fail(format!(
                    "no square completion for (w={}, f={})",
                    b.one_name(w0),
                    b.one_name(f0)
                ));
                break 'bf3;
            }
        }
    }

    let mut bf4a = BfAxiom::ok();
    let mut bf4b = BfAxiom::ok();
    let mut bf4c = BfAxiom::ok();
    for w0 in b.one_ids() {
        if !w.contains(w0) {
            continue;
        }
        for f1 in b.one_ids() {
            if b.one_tgt(f1) != b.one_src(w0) {
                continue;
            }
            for f2 in b.hom1(b.one_src(f1), b.one_tgt(f1)) {
                let lhs = b.c1(w0, f1)?;
                let rhs = b.c1(w0, f2)?;
                for alpha in b.cells_between(lhs, rhs) {
                    let inst = || {
                        format!(
                            "(w={}, f1={}, f2={}, α={})",
                            b.one_name(w0),
                            b.one_name(f1),
                            b.one_name(f2),
                            b.cell_name(alpha)
                        )
                    };
                    // (4a): some (v, β) exists, with no invertibility demand.
                    let all = bf4_all_witnesses(b, w, w0, f1, f2, alpha)?;
                    if all.is_empty() {
                        if bf4a.pass {
                            bf4a = BfAxiom::fail(format!("no cancellation for {}", inst()));
                        }
                        continue;
                    }
                    // (4b): with α invertible, some witness has β invertible.
                    if b.is_invertible(alpha)
                        && !all.iter().any(|&(_, beta)| b.is_invertible(beta))
                        && bf4b.pass
                    {
                        bf4b = BfAxiom::fail(format!("no invertible cancellation for {}", inst()));
                    }
                    // (4c): any two witnesses are linked by a (u, u′, ζ).
                    if bf4c.pass {
                        'pairs: for &(v, beta) in &all {
                            for &(vp, betap) in &all {
                                if !bf4c_linked(b, w, f1, f2, v, beta, vp, betap)? {
                                    bf4c = BfAxiom::fail(format!(
                                        "witnesses (v={}, β={}) and (v={}, β={}) unlinked for {}",
                                        b.one_name(v),
                                        b.cell_name(beta),
                                        b.one_name(vp),
                                        b.cell_name(betap),
                                        inst()
                                    ));
                                    break 'pairs;
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    let mut bf5 = BfAxiom::ok();
    'bf5: for w0 in b.one_ids() {
        if !w.contains(w0) {
            continue;
        }
        for v in b.hom1(b.one_src(w0), b.one_tgt(w0)) {
            if w.contains(v) {
                continue;
            }
            let connected = b
                .cells_between(v, w0)
                .into_iter()
                .any(|a| b.is_invertible(a));
            if connected {
                bf5 = BfAxiom::fail(format!(
                    "{} ≅ {} ∈ W but not in W",
                    b.one_name(v),
                    b.one_name(w0)
                ));
                break 'bf5;
            }
        }
    }

    Ok(BfReport {
        bf1,
        bf2,
        bf3,
        bf4a,
        bf4b,
        bf4c,
        bf5,
    })
}

/// Every `(v, β)` satisfying the right-cancellation equation for the given
/// instance (no invertibility demand on `β`).
fn bf4_all_witnesses(
    b: &FinBicategory,
    w: &OneClass,
    w0: OneId,
    f1: OneId,
    f2: OneId,
    alpha: CellId,
) -> Result<Vec<(OneId, CellId)>> {
    let mut out = Vec::new();
    for v in b.one_ids() {
        if !w.contains(v) || b.one_tgt(v) != b.one_src(f1) {
            continue;
        }
        let lhs = b.c1(f1, v)?;
        let rhs = b.c1(f2, v)?;
        let av = b.wr(alpha, v)?;
        for beta in b.cells_between(lhs, rhs) {
            if b.wl(w0, beta)? == av {
                out.push((v, beta));
            }
        }
    }
    Ok(out)
}

/// Does some `(E, u, u′, ζ)` link two cancellation witnesses as the third
/// BF4 sub-condition demands?
fn bf4c_linked(
    b: &FinBicategory,
    w: &OneClass,
    f1: OneId,
    f2: OneId,
    v: OneId,
    beta: CellId,
    vp: OneId,
    betap: CellId,
) -> Result<bool> {
    for e in b.objects() {
        for u in b.hom1(e, b.one_src(v)) {
            let vu = b.c1(v, u)?;
            if !w.contains(vu) {
                continue;
            }
            for up in b.hom1(e, b.one_src(vp)) {
                let vpup = b.c1(vp, up)?;
                for zeta in b.cells_between(vu, vpup) {
                    if !b.is_invertible(zeta) {
                        continue;
                    }
                    // (β′∗i_{u′}) ⊙ (i_{f1}∗ζ) = (i_{f2}∗ζ) ⊙ (β∗i_u)
                    let lhs = b.v(b.wr(betap, up)?, b.wl(f1, zeta)?)?;
                    let rhs = b.v(b.wl(f2, zeta)?, b.wr(beta, u)?)?;
                    if lhs == rhs {
                        return Ok(true);
                    }
                }
            }
        }
    }
    Ok(false)
}

/// Policy for filling the non-degenerate choice-table entries.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum ChoicePolicy {
    /// Lexicographically least square completion everywhere.
    Lex,
    /// Additionally normalize the diagonal entries `(v, v)` to the trivial
    /// square (the default).
    C3,
}

/// One fixed square completion: `ρ: f∘v′ ⇒ v∘f′` with `v′ ∈ W`.
#[derive(Copy, Clone, Debug)]
pub struct ChoiceEntry {
    pub apex: ObjId,
    pub v_prime: OneId,
    pub f_prime: OneId,
    pub rho: CellId,
}

/// The complete table of fixed square completions determining composition in
/// the localized bicategory.
#[derive(Clone, Debug)]
pub struct ChoiceTable {
    pub policy: ChoicePolicy,
    entries: HashMap<(OneId, OneId), ChoiceEntry>,
}

impl ChoiceTable {
    /// Entry for the cospan `(f, v)` with `v ∈ W`.
    pub fn get(&self, f: OneId, v: OneId) -> Result<&ChoiceEntry> {
        self.entries
            .get(&(f, v))
            .ok_or_else(|| Error::Structure("missing choice-table entry".into()))
    }
}

/// Fix a total choice table: the identity-leg normalizations are always
/// enforced (in priority order), the diagonal normalization under
/// [`ChoicePolicy::C3`], and every remaining entry is the lexicographically
/// least square completion.
pub fn build_choice_table(
    b: &FinBicategory,
    w: &OneClass,
    policy: ChoicePolicy,
) -> Result<ChoiceTable> {
    let report = check_bf_axioms(b, w)?;
    if !report.all_pass() {
        return Err(Error::BfViolation(
            "choice table requires the fraction axioms".into(),
        ));
    }
    let mut entries = HashMap::new();
    for f in b.one_ids() {
        for v in b.one_ids() {
            if !w.contains(v) || b.one_tgt(v) != b.one_tgt(f) {
                continue;
            }
            let entry = if f == b.id1(b.one_tgt(f)) {
                // f is the identity: complete with v itself.
                let apex = b.one_src(v);
                let rho = b.v(
                    b.inverse(b.runit(v))
                        .ok_or_else(|| Error::Structure("unitor not invertible".into()))?,
                    b.lunit(v),
                )?;
                ChoiceEntry {
                    apex,
                    v_prime: v,
                    f_prime: b.id1(apex),
                    rho,
                }
            } else if v == b.id1(b.one_tgt(v)) {
                // v is the identity: complete with f itself.
                let apex = b.one_src(f);
                let rho = b.v(
                    b.inverse(b.lunit(f))
                        .ok_or_else(|| Error::Structure("unitor not invertible".into()))?,
                    b.runit(f),
                )?;
                ChoiceEntry {
                    apex,
                    v_prime: b.id1(apex),
                    f_prime: f,
                    rho,
                }
            } else if policy == ChoicePolicy::C3 && f == v {
                // Diagonal: the trivial square.
                let apex = b.one_src(f);
                let idap = b.id1(apex);
                ChoiceEntry {
                    apex,
                    v_prime: idap,
                    f_prime: idap,
                    rho: b.id2(b.c1(f, idap)?),
                }
            } else {
                let (apex, v_prime, f_prime, rho) = bf3_witness(b, w, v, f)
                    .ok_or_else(|| Error::Defect("square completion vanished".into()))?;
                ChoiceEntry {
                    apex,
                    v_prime,
                    f_prime,
                    rho,
                }
            };
            entries.insert((f, v), entry);
        }
    }
    Ok(ChoiceTable { policy, entries })
}

/// A 1-cell of the localized bicategory: `w: A′→A` in W and `f: A′→B`,
/// read "f after formally inverted w".
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TripleMor {
    pub apex: ObjId,
    pub w: OneId,
    pub f: OneId,
}

impl TripleMor {
    pub fn source(&self, b: &FinBicategory) -> ObjId {
        b.one_tgt(self.w)
    }
    pub fn target(&self, b: &FinBicategory) -> ObjId {
        b.one_tgt(self.f)
    }
    pub fn display(&self, b: &FinBicategory) -> String {
        format!(
            "[{},{},{}]",
            b.object_name(self.apex),
            b.one_name(self.w),
            b.one_name(self.f)
        )
    }
    fn check(&self, b: &FinBicategory, w: &OneClass) -> Result<()> {
        if b.one_src(self.w) != self.apex || b.one_src(self.f) != self.apex {
            return Err(Error::Precondition("triple legs must share the apex".into()));
        }
        if !w.contains(self.w) {
            return Err(Error::Precondition("triple w-leg must be in W".into()));
        }
        Ok(())
    }
}

/// A representative of a 2-cell of the localized bicategory, between triples
/// `(A¹,w¹,f¹)` and `(A²,w²,f²)`: legs `vm: apex→Am`, an invertible
/// `α: w¹∘v¹ ⇒ w²∘v²` with `w¹∘v¹ ∈ W`, and `β: f¹∘v¹ ⇒ f²∘v²`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct QuintupleRep {
    pub apex: ObjId,
    pub v1: OneId,
    pub v2: OneId,
    pub alpha: CellId,
    pub beta: CellId,
}

impl QuintupleRep {
    fn check(
        &self,
        b: &FinBicategory,
        w: &OneClass,
        t1: &TripleMor,
        t2: &TripleMor,
    ) -> Result<()> {
        if b.one_src(self.v1) != self.apex
            || b.one_src(self.v2) != self.apex
            || b.one_tgt(self.v1) != t1.apex
            || b.one_tgt(self.v2) != t2.apex
        {
            return Err(Error::Precondition("quintuple legs ill-typed".into()));
        }
        let wv1 = b.c1(t1.w, self.v1)?;
        let wv2 = b.c1(t2.w, self.v2)?;
        if b.cell_src(self.alpha) != wv1 || b.cell_tgt(self.alpha) != wv2 {
            return Err(Error::Precondition("quintuple α ill-typed".into()));
        }
        if !b.is_invertible(self.alpha) {
            return Err(Error::Precondition("quintuple α must be invertible".into()));
        }
        if !w.contains(wv1) {
            return Err(Error::Precondition("quintuple w-composite must be in W".into()));
        }
        let fv1 = b.c1(t1.f, self.v1)?;
        let fv2 = b.c1(t2.f, self.v2)?;
        if b.cell_src(self.beta) != fv1 || b.cell_tgt(self.beta) != fv2 {
            return Err(Error::Precondition("quintuple β ill-typed".into()));
        }
        Ok(())
    }
}

/// Do two quintuples between the same pair of triples represent the same
/// 2-cell?  Exhaustive search for the connecting data `(A⁴, z, z′, σ¹, σ²)`
/// with `(w¹∘v¹)∘z ∈ W`, both σ invertible, and the two comparison equations
/// (all coherence cells are identities in the strict ambient).
pub fn two_cells_equivalent(
    b: &FinBicategory,
    w: &OneClass,
    t1: &TripleMor,
    t2: &TripleMor,
    r1: &QuintupleRep,
    r2: &QuintupleRep,
) -> Result<bool> {
    t1.check(b, w)?;
    t2.check(b, w)?;
    r1.check(b, w, t1, t2)?;
    r2.check(b, w, t1, t2)?;
    for a4 in b.objects() {
        for z in b.hom1(a4, r1.apex) {
            if !w.contains(cc(b, &[t1.w, r1.v1, z])?) {
                continue;
            }
            for zp in b.hom1(a4, r2.apex) {
                let s1_src = b.c1(r2.v1, zp)?;
                let s1_tgt = b.c1(r1.v1, z)?;
                let s2_src = b.c1(r1.v2, z)?;
                let s2_tgt = b.c1(r2.v2, zp)?;
                for s1 in b.cells_between(s1_src, s1_tgt) {
                    if !b.is_invertible(s1) {
                        continue;
                    }
                    for s2 in b.cells_between(s2_src, s2_tgt) {
                        if !b.is_invertible(s2) {
                            continue;
                        }
                        // (i_{w²}∗σ²) ⊙ (α∗i_z) ⊙ (i_{w¹}∗σ¹) = α′∗i_{z′}
                        let lw = b.vchain(&[
                            b.wl(t1.w, s1)?,
                            b.wr(r1.alpha, z)?,
                            b.wl(t2.w, s2)?,
                        ])?;
                        if lw != b.wr(r2.alpha, zp)? {
                            continue;
                        }
                        let lf = b.vchain(&[
                            b.wl(t1.f, s1)?,
                            b.wr(r1.beta, z)?,
                            b.wl(t2.f, s2)?,
                        ])?;
                        if lf == b.wr(r2.beta, zp)? {
                            return Ok(true);
                        }
                    }
                }
            }
        }
    }
    Ok(false)
}

/// One 2-cell of the localized bicategory: its full member list (sorted;
/// the canonical representative is the least member).
#[derive(Clone, Debug)]
pub struct TwoCellClassData {
    pub src: OneId,
    pub tgt: OneId,
    pub members: Vec<QuintupleRep>,
}

/// The localized bicategory together with its provenance maps.
pub struct Localization {
    pub bicat: FinBicategory,
    /// Triple of each localized 1-cell, indexed by 1-cell ordinal.
    pub triples: Vec<TripleMor>,
    /// Class data of each localized 2-cell, indexed by 2-cell ordinal.
    pub classes: Vec<TwoCellClassData>,
    one_index: HashMap<TripleMor, OneId>,
}

impl Localization {
    /// Localized 1-cell carrying a given triple.
    pub fn one_of(&self, t: &TripleMor) -> Option<OneId> {
        self.one_index.get(t).copied()
    }

    /// Localized 2-cell whose class contains the given representative.
    pub fn class_of(&self, src: OneId, tgt: OneId, rep: &QuintupleRep) -> Option<CellId> {
        self.classes
            .iter()
            .position(|c| c.src == src && c.tgt == tgt && c.members.contains(rep))
            .map(|i| CellId(i as u16))
    }
}

/// Composite of two triples through the choice table:
/// `t2∘t1 = (A″, w₁∘v′, g∘f′)` for the chosen completion of `(f₁, w₂)`.
pub fn compose_triples(
    b: &FinBicategory,
    choices: &ChoiceTable,
    t2: &TripleMor,
    t1: &TripleMor,
) -> Result<TripleMor> {
    if t1.target(b) != t2.source(b) {
        return Err(Error::NonComposable("triples".into()));
    }
    let e = choices.get(t1.f, t2.w)?;
    Ok(TripleMor {
        apex: e.apex,
        w: b.c1(t1.w, e.v_prime)?,
        f: b.c1(t2.f, e.f_prime)?,
    })
}

/// Vertical composite representative, built from square completions and
/// right cancellations on the canonical representatives.
pub fn vcomp_rep(
    b: &FinBicategory,
    w: &OneClass,
    t1: &TripleMor,
    t2: &TripleMor,
    t3: &TripleMor,
    g: &QuintupleRep,
    gp: &QuintupleRep,
) -> Result<QuintupleRep> {
    let (_, _) = (t1, t3);
    let (a1, a2) = (g.v1, g.v2);
    let (b2, b3) = (gp.v1, gp.v2);
    let w2a2 = b.c1(t2.w, a2)?;
    let w2b2 = b.c1(t2.w, b2)?;
    if !w.contains(w2a2) {
        return Err(Error::Defect("w-composite escaped W".into()));
    }
    let (_, zp, z, eps) = bf3_witness(b, w, w2a2, w2b2)
        .ok_or_else(|| Error::Defect("square completion vanished".into()))?;
    // ε: (w²∘b2)∘z′ ⇒ (w²∘a2)∘z, cancel w² on the left.
    let b2zp = b.c1(b2, zp)?;
    let a2z = b.c1(a2, z)?;
    let (y, zeta) = bf4_witness(b, w, t2.w, b2zp, a2z, eps)
        .ok_or_else(|| Error::Defect("right cancellation vanished".into()))?;
    let zy = b.c1(z, y)?;
    let zpy = b.c1(zp, y)?;
    let zeta_inv = b
        .inverse(zeta)
        .ok_or_else(|| Error::Defect("cancellation cell not invertible".into()))?;
    let alpha = b.vchain(&[
        b.wr(g.alpha, zy)?,
        b.wl(t2.w, zeta_inv)?,
        b.wr(gp.alpha, zpy)?,
    ])?;
    let beta = b.vchain(&[
        b.wr(g.beta, zy)?,
        b.wl(t2.f, zeta_inv)?,
        b.wr(gp.beta, zpy)?,
    ])?;
    Ok(QuintupleRep {
        apex: b.one_src(y),
        v1: b.c1(a1, zy)?,
        v2: b.c1(b3, zpy)?,
        alpha,
        beta,
    })
}

/// Left-whisker representative `i_t ∗ Γ` for `t = (B′, v, g)` after
/// `Γ: t1 ⇒ t2`.
pub fn lwhisker_rep(
    b: &FinBicategory,
    w: &OneClass,
    choices: &ChoiceTable,
    t: &TripleMor,
    t1: &TripleMor,
    t2: &TripleMor,
    g: &QuintupleRep,
) -> Result<QuintupleRep> {
    let (a1, a2) = (g.v1, g.v2);
    let e1 = *choices.get(t1.f, t.w)?;
    let e2 = *choices.get(t2.f, t.w)?;
    // κ1 completes (v¹′ ∈ W, a1); κ2 completes (v²′ ∈ W, a2∘p).
    let (_, p, q1, k1) = bf3_witness(b, w, e1.v_prime, a1)
        .ok_or_else(|| Error::Defect("square completion vanished".into()))?;
    let a2p = b.c1(a2, p)?;
    let (_, r, q2, k2) = bf3_witness(b, w, e2.v_prime, a2p)
        .ok_or_else(|| Error::Defect("square completion vanished".into()))?;
    let pr = b.c1(p, r)?;
    let q1r = b.c1(q1, r)?;
    let k1_inv = b
        .inverse(k1)
        .ok_or_else(|| Error::Defect("completion cell not invertible".into()))?;
    let rho1_inv = b
        .inverse(e1.rho)
        .ok_or_else(|| Error::Defect("choice cell not invertible".into()))?;
    let alpha0 = b.vchain(&[
        b.wl(t1.w, b.wr(k1_inv, r)?)?,
        b.wr(g.alpha, pr)?,
        b.wl(t2.w, k2)?,
    ])?;
    // χ: v∘(h¹∘q1∘r) ⇒ v∘(h²∘q2), then cancel v on the left.
    let chi = b.vchain(&[
        b.wr(rho1_inv, q1r)?,
        b.wl(t1.f, b.wr(k1_inv, r)?)?,
        b.wr(g.beta, pr)?,
        b.wl(t2.f, k2)?,
        b.wr(e2.rho, q2)?,
    ])?;
    let h1q1r = cc(b, &[e1.f_prime, q1, r])?;
    let h2q2 = b.c1(e2.f_prime, q2)?;
    let (s, delta) = bf4_witness(b, w, t.w, h1q1r, h2q2, chi)
        .ok_or_else(|| Error::Defect("right cancellation vanished".into()))?;
    Ok(QuintupleRep {
        apex: b.one_src(s),
        v1: b.c1(q1r, s)?,
        v2: b.c1(q2, s)?,
        alpha: b.wr(alpha0, s)?,
        beta: b.wl(t.f, delta)?,
    })
}

/// Right-whisker representative `Γ ∗ i_t` for `Γ: t1 ⇒ t2` before
/// `t = (A′, w, f)`.
pub fn rwhisker_rep(
    b: &FinBicategory,
    w: &OneClass,
    choices: &ChoiceTable,
    g: &QuintupleRep,
    t1: &TripleMor,
    t2: &TripleMor,
    t: &TripleMor,
) -> Result<QuintupleRep> {
    let (a1, a2) = (g.v1, g.v2);
    let e1 = *choices.get(t.f, t1.w)?;
    let e2 = *choices.get(t.f, t2.w)?;
    // κ completes (v¹′ ∈ W, v²′): identifies the two composite w-legs.
    let (_, u, q, kappa) = bf3_witness(b, w, e1.v_prime, e2.v_prime)
        .ok_or_else(|| Error::Defect("square completion vanished".into()))?;
    let kappa_inv = b
        .inverse(kappa)
        .ok_or_else(|| Error::Defect("completion cell not invertible".into()))?;
    // χ: w¹∘(f¹′∘q) ⇒ w²∘(f²′∘u).
    let rho1_inv = b
        .inverse(e1.rho)
        .ok_or_else(|| Error::Defect("choice cell not invertible".into()))?;
    let chi = b.vchain(&[
        b.wr(rho1_inv, q)?,
        b.wl(t.f, kappa_inv)?,
        b.wr(e2.rho, u)?,
    ])?;
    // ψ completes (w¹∘a1 ∈ W, w¹∘(f¹′∘q)); then cancel w¹.
    let w1a1 = b.c1(t1.w, a1)?;
    if !w.contains(w1a1) {
        return Err(Error::Defect("w-composite escaped W".into()));
    }
    let f1pq = b.c1(e1.f_prime, q)?;
    let w1f1pq = b.c1(t1.w, f1pq)?;
    let (_, x, e, psi) = bf3_witness(b, w, w1a1, w1f1pq)
        .ok_or_else(|| Error::Defect("square completion vanished".into()))?;
    let (x2, phi1) = bf4_witness(b, w, t1.w, b.c1(f1pq, x)?, b.c1(a1, e)?, psi)
        .ok_or_else(|| Error::Defect("right cancellation vanished".into()))?;
    // ξ: w²∘(f²′∘u∘x∘x₂) ⇒ w²∘(a2∘e∘x₂); then cancel w².
    let xx2 = b.c1(x, x2)?;
    let ex2 = b.c1(e, x2)?;
    let chi_xx2_inv = b
        .inverse(b.wr(chi, xx2)?)
        .ok_or_else(|| Error::Defect("comparison cell not invertible".into()))?;
    let xi = b.vchain(&[chi_xx2_inv, b.wl(t1.w, b.wr(phi1, x2)?)?, b.wr(g.alpha, ex2)?])?;
    let f2pu = b.c1(e2.f_prime, u)?;
    let (x3, phi2) = bf4_witness(b, w, t2.w, b.c1(f2pu, xx2)?, b.c1(a2, ex2)?, xi)
        .ok_or_else(|| Error::Defect("right cancellation vanished".into()))?;
    let tail = cc(b, &[x, x2, x3])?;
    let ex2x3 = b.c1(ex2, x3)?;
    let phi2_inv = b
        .inverse(phi2)
        .ok_or_else(|| Error::Defect("cancellation cell not invertible".into()))?;
    let alpha = b.wr(
        b.inverse(b.wl(t.w, kappa)?)
            .ok_or_else(|| Error::Defect("comparison cell not invertible".into()))?,
        tail,
    )?;
    let beta = b.vchain(&[
        b.wl(t1.f, b.wr(phi1, x3)?)?,
        b.wr(g.beta, ex2x3)?,
        b.wl(t2.f, phi2_inv)?,
    ])?;
    Ok(QuintupleRep {
        apex: b.one_src(x3),
        v1: b.c1(q, tail)?,
        v2: b.c1(u, tail)?,
        alpha,
        beta,
    })
}

/// Associator representative `t3∘(t2∘t1) ⇒ (t3∘t2)∘t1`, built from the four
/// choice-table completions of the two bracketings.
pub fn assoc_rep(
    b: &FinBicategory,
    w: &OneClass,
    choices: &ChoiceTable,
    t1: &TripleMor,
    t2: &TripleMor,
    t3: &TripleMor,
) -> Result<QuintupleRep> {
    let ep = *choices.get(t1.f, t2.w)?; // (P, p, q, ρ₁)
    let (p, q, rho1) = (ep.v_prime, ep.f_prime, ep.rho);
    let f2q = b.c1(t2.f, q)?;
    let es = *choices.get(f2q, t3.w)?; // (S, s, t, σ)
    let (s, tt, sigma) = (es.v_prime, es.f_prime, es.rho);
    let eq = *choices.get(t2.f, t3.w)?; // (Q, u, v, τ)
    let (u, v, tau) = (eq.v_prime, eq.f_prime, eq.rho);
    let w2u = b.c1(t2.w, u)?;
    let er = *choices.get(t1.f, w2u)?; // (R, r, k, π)
    let (r, k, pi) = (er.v_prime, er.f_prime, er.rho);

    // Step 1: identify the two w-legs over B¹'s leg.
    let ps = b.c1(p, s)?;
    if !w.contains(ps) {
        return Err(Error::Defect("w-composite escaped W".into()));
    }
    let (_, x1, a, kappa) = bf3_witness(b, w, ps, r)
        .ok_or_else(|| Error::Defect("square completion vanished".into()))?;
    // κ: r∘x₁ ⇒ (p∘s)∘a
    let sa = b.c1(s, a)?;
    let kx1 = b.c1(k, x1)?;
    let pi_inv = b
        .inverse(pi)
        .ok_or_else(|| Error::Defect("choice cell not invertible".into()))?;
    // Step 2: χ: w₂∘(u∘k∘x₁) ⇒ w₂∘(q∘s∘a); cancel w₂.
    let chi = b.vchain(&[b.wr(pi_inv, x1)?, b.wl(t1.f, kappa)?, b.wr(rho1, sa)?])?;
    let ukx1 = b.c1(u, kx1)?;
    let qsa = b.c1(q, sa)?;
    let (x2, phi) = bf4_witness(b, w, t2.w, ukx1, qsa, chi)
        .ok_or_else(|| Error::Defect("right cancellation vanished".into()))?;
    let phi_inv = b
        .inverse(phi)
        .ok_or_else(|| Error::Defect("cancellation cell not invertible".into()))?;
    // Step 3: ξ: w₃∘(t∘a∘x₂) ⇒ w₃∘(v∘k∘x₁∘x₂); cancel w₃.
    let ax2 = b.c1(a, x2)?;
    let kx1x2 = b.c1(kx1, x2)?;
    let sigma_inv = b
        .inverse(sigma)
        .ok_or_else(|| Error::Defect("choice cell not invertible".into()))?;
    let xi = b.vchain(&[
        b.wr(sigma_inv, ax2)?,
        b.wl(t2.f, phi_inv)?,
        b.wr(tau, kx1x2)?,
    ])?;
    let tax2 = b.c1(tt, ax2)?;
    let vkx1x2 = b.c1(v, kx1x2)?;
    let (x3, delta) = bf4_witness(b, w, t3.w, tax2, vkx1x2, xi)
        .ok_or_else(|| Error::Defect("right cancellation vanished".into()))?;
    let x2x3 = b.c1(x2, x3)?;
    let alpha = b.wr(
        b.inverse(b.wl(t1.w, kappa)?)
            .ok_or_else(|| Error::Defect("comparison cell not invertible".into()))?,
        x2x3,
    )?;
    Ok(QuintupleRep {
        apex: b.one_src(x3),
        v1: b.c1(a, x2x3)?,
        v2: b.c1(x1, x2x3)?,
        alpha,
        beta: b.wl(t3.f, delta)?,
    })
}

/// Build the localized bicategory for `(C2, W)` under a fixed choice table.
/// 1-cells are all triples, 2-cells are quintuple classes computed by
/// exhaustive witness search plus transitive closure, composition is computed
/// on canonical representatives, and the unitors are identity tables.
pub fn localize_bicategory(
    b: &FinBicategory,
    w: &OneClass,
    choices: &ChoiceTable,
    caps: &SizeCaps,
) -> Result<Localization> {
    if !b.strict {
        return Err(Error::Precondition("ambient bicategory must be strict".into()));
    }
    let report = check_bf_axioms(b, w)?;
    if !report.all_pass() {
        return Err(Error::BfViolation(
            "localization requires the fraction axioms".into(),
        ));
    }

    // 1-cells: every triple, ordered by (w ordinal, f ordinal).
    let mut triples: Vec<TripleMor> = Vec::new();
    for wm in b.one_ids() {
        if !w.contains(wm) {
            continue;
        }
        for f in b.one_ids() {
            if b.one_src(f) == b.one_src(wm) {
                triples.push(TripleMor {
                    apex: b.one_src(wm),
                    w: wm,
                    f,
                });
            }
        }
    }
    if triples.len() > caps.ones {
        return Err(Error::SizeLimit(format!(
            "{} localized 1-cells",
            triples.len()
        )));
    }
    let one_index: HashMap<TripleMor, OneId> = triples
        .iter()
        .enumerate()
        .map(|(i, t)| (*t, OneId(i as u16)))
        .collect();
    let lookup_one = |t: &TripleMor| -> Result<OneId> {
        one_index
            .get(t)
            .copied()
            .ok_or_else(|| Error::Defect("composite triple not enumerated".into()))
    };

    let id_triple =
        |a: ObjId| -> TripleMor { TripleMor { apex: a, w: b.id1(a), f: b.id1(a) } };

    // comp1 over composable triples.
    let mut comp1: HashMap<(OneId, OneId), OneId> = HashMap::new();
    for (j, t2) in triples.iter().enumerate() {
        for (i, t1) in triples.iter().enumerate() {
            if t1.target(b) != t2.source(b) {
                continue;
            }
            let c = compose_triples(b, choices, t2, t1)?;
            comp1.insert((OneId(j as u16), OneId(i as u16)), lookup_one(&c)?);
        }
    }
    // The identity-leg normalizations make identity triples strict units.
    for (i, t) in triples.iter().enumerate() {
        let one = OneId(i as u16);
        let src_id = lookup_one(&id_triple(t.source(b)))?;
        let tgt_id = lookup_one(&id_triple(t.target(b)))?;
        if comp1.get(&(one, src_id)) != Some(&one) || comp1.get(&(tgt_id, one)) != Some(&one) {
            return Err(Error::Defect(
                "identity triples fail to be strict units".into(),
            ));
        }
    }

    // 2-cell classes per ordered pair of parallel triples.
    let mut classes: Vec<TwoCellClassData> = Vec::new();
    let mut rep_index: HashMap<(OneId, OneId, QuintupleRep), CellId> = HashMap::new();
    for (i, t1) in triples.iter().enumerate() {
        for (j, t2) in triples.iter().enumerate() {
            if t1.source(b) != t2.source(b) || t1.target(b) != t2.target(b) {
                continue;
            }
            let mut reps: Vec<QuintupleRep> = Vec::new();
            for a3 in b.objects() {
                for v1 in b.hom1(a3, t1.apex) {
                    let wv1 = b.c1(t1.w, v1)?;
                    if !w.contains(wv1) {
                        continue;
                    }
                    for v2 in b.hom1(a3, t2.apex) {
                        let wv2 = b.c1(t2.w, v2)?;
                        let fv1 = b.c1(t1.f, v1)?;
                        let fv2 = b.c1(t2.f, v2)?;
                        for alpha in b.cells_between(wv1, wv2) {
                            if !b.is_invertible(alpha) {
                                continue;
                            }
                            for beta in b.cells_between(fv1, fv2) {
                                reps.push(QuintupleRep {
                                    apex: a3,
                                    v1,
                                    v2,
                                    alpha,
                                    beta,
                                });
                            }
                        }
                    }
                }
            }
            reps.sort();
            // Transitive closure of the pairwise witness relation.
            let n = reps.len();
            let mut parent: Vec<usize> = (0..n).collect();
            fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
                while parent[x] != x {
                    parent[x] = parent[parent[x]];
                    x = parent[x];
                }
                x
            }
            for x in 0..n {
                for y in (x + 1)..n {
                    if find(&mut parent, x) == find(&mut parent, y) {
                        continue;
                    }
                    if two_cells_equivalent(b, w, t1, t2, &reps[x], &reps[y])? {
                        let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                        parent[rx.max(ry)] = rx.min(ry);
                    }
                }
            }
            let mut groups: HashMap<usize, Vec<QuintupleRep>> = HashMap::new();
            for x in 0..n {
                let r = find(&mut parent, x);
                groups.entry(r).or_default().push(reps[x]);
            }
            let mut keys: Vec<usize> = groups.keys().copied().collect();
            keys.sort();
            for kix in keys {
                let members = groups.remove(&kix).unwrap();
                let cell = CellId(classes.len() as u16);
                for m in &members {
                    rep_index.insert((OneId(i as u16), OneId(j as u16), *m), cell);
                }
                classes.push(TwoCellClassData {
                    src: OneId(i as u16),
                    tgt: OneId(j as u16),
                    members,
                });
            }
        }
    }
    if classes.len() > caps.cells {
        return Err(Error::SizeLimit(format!(
            "{} localized 2-cells",
            classes.len()
        )));
    }
    let classify = |src: OneId, tgt: OneId, rep: &QuintupleRep| -> Result<CellId> {
        rep_index
            .get(&(src, tgt, *rep))
            .copied()
            .ok_or_else(|| Error::Defect("computed representative not classified".into()))
    };

    // Identity 2-cells.
    let mut id2: Vec<CellId> = Vec::new();
    for (i, t) in triples.iter().enumerate() {
        let ida = b.id1(t.apex);
        let rep = QuintupleRep {
            apex: t.apex,
            v1: ida,
            v2: ida,
            alpha: b.id2(b.c1(t.w, ida)?),
            beta: b.id2(b.c1(t.f, ida)?),
        };
        id2.push(classify(OneId(i as u16), OneId(i as u16), &rep)?);
    }

    // Vertical composition on canonical representatives.
    let mut vcomp: HashMap<(CellId, CellId), CellId> = HashMap::new();
    for (ci, c1d) in classes.iter().enumerate() {
        for (cj, c2d) in classes.iter().enumerate() {
            if c1d.tgt != c2d.src {
                continue;
            }
            let t1 = &triples[c1d.src.0 as usize];
            let t2 = &triples[c1d.tgt.0 as usize];
            let t3 = &triples[c2d.tgt.0 as usize];
            let rep = vcomp_rep(b, w, t1, t2, t3, &c1d.members[0], &c2d.members[0])?;
            let out = classify(c1d.src, c2d.tgt, &rep)?;
            vcomp.insert((CellId(cj as u16), CellId(ci as u16)), out);
        }
    }

    // Horizontal composition via the two whiskerings.
    let mut hcomp: HashMap<(CellId, CellId), CellId> = HashMap::new();
    for (ci, c1d) in classes.iter().enumerate() {
        for (cj, c2d) in classes.iter().enumerate() {
            let t1 = &triples[c1d.src.0 as usize];
            let t1p = &triples[c1d.tgt.0 as usize];
            let t2 = &triples[c2d.src.0 as usize];
            let t2p = &triples[c2d.tgt.0 as usize];
            if t1.target(b) != t2.source(b) {
                continue;
            }
            // i_{t2} ∗ Γ₁ : t2∘t1 ⇒ t2∘t1′
            let lrep = lwhisker_rep(b, w, choices, t2, t1, t1p, &c1d.members[0])?;
            let lsrc = lookup_one(&compose_triples(b, choices, t2, t1)?)?;
            let lmid = lookup_one(&compose_triples(b, choices, t2, t1p)?)?;
            let lcell = classify(lsrc, lmid, &lrep)?;
            // Γ₂ ∗ i_{t1′} : t2∘t1′ ⇒ t2′∘t1′
            let rrep = rwhisker_rep(b, w, choices, &c2d.members[0], t2, t2p, t1p)?;
            let rtgt = lookup_one(&compose_triples(b, choices, t2p, t1p)?)?;
            let rcell = classify(lmid, rtgt, &rrep)?;
            let out = *vcomp
                .get(&(rcell, lcell))
                .ok_or_else(|| Error::Defect("whisker composite missing".into()))?;
            hcomp.insert((CellId(cj as u16), CellId(ci as u16)), out);
        }
    }

    // Associators.
    let mut assoc: HashMap<(OneId, OneId, OneId), CellId> = HashMap::new();
    for (k3, t3) in triples.iter().enumerate() {
        for (k2, t2) in triples.iter().enumerate() {
            if t2.target(b) != t3.source(b) {
                continue;
            }
            for (k1, t1) in triples.iter().enumerate() {
                if t1.target(b) != t2.source(b) {
                    continue;
                }
                let rep = assoc_rep(b, w, choices, t1, t2, t3)?;
                let src =
                    lookup_one(&compose_triples(b, choices, t3, &compose_triples(b, choices, t2, t1)?)?)?;
                let tgt =
                    lookup_one(&compose_triples(b, choices, &compose_triples(b, choices, t3, t2)?, t1)?)?;
                let cell = classify(src, tgt, &rep)?;
                assoc.insert((OneId(k3 as u16), OneId(k2 as u16), OneId(k1 as u16)), cell);
            }
        }
    }

    let ones: Vec<OneData> = triples
        .iter()
        .map(|t| OneData {
            name: t.display(b),
            src: t.source(b),
            tgt: t.target(b),
        })
        .collect();
    let cells: Vec<CellData> = classes
        .iter()
        .map(|c| {
            let r = &c.members[0];
            CellData {
                name: format!(
                    "[{},{},{},{},{}]",
                    b.object_name(r.apex),
                    b.one_name(r.v1),
                    b.one_name(r.v2),
                    b.cell_name(r.alpha),
                    b.cell_name(r.beta)
                ),
                src: c.src,
                tgt: c.tgt,
            }
        })
        .collect();
    let id1: Vec<OneId> = b
        .objects()
        .map(|a| lookup_one(&id_triple(a)))
        .collect::<Result<_>>()?;
    let runitor: Vec<CellId> = (0..ones.len()).map(|i| id2[i]).collect();
    let lunitor = runitor.clone();
    let bicat = FinBicategory::from_parts(
        BicatParts {
            name: format!("{}[W⁻¹]", b.name),
            objects: b.objects().map(|a| b.object_name(a).to_string()).collect(),
            ones,
            cells,
            id1,
            id2,
            comp1,
            vcomp,
            hcomp,
            assoc,
            runitor,
            lunitor,
            strict: false,
        },
        caps,
    )?;
    Ok(Localization {
        bicat,
        triples,
        classes,
        one_index,
    })
}

/// For `w0 ∈ W` and `w0∘v ∈ W`, find `(D, z)` with `v∘z ∈ W`; existence is
/// guaranteed under the axioms, so absence is an engine defect.
pub fn right_saturation_witness(
    b: &FinBicategory,
    w: &OneClass,
    w0: OneId,
    v: OneId,
) -> Result<(ObjId, OneId)> {
    w.check_parent(b)?;
    if !w.contains(w0) {
        return Err(Error::Precondition("w must be in W".into()));
    }
    if b.one_tgt(v) != b.one_src(w0) {
        return Err(Error::NonComposable("saturation pair".into()));
    }
    if !w.contains(b.c1(w0, v)?) {
        return Err(Error::Precondition("w∘v must be in W".into()));
    }
    for d in b.objects() {
        for z in b.hom1(d, b.one_src(v)) {
            if w.contains(b.c1(v, z)?) {
                return Ok((d, z));
            }
        }
    }
    Err(Error::Defect("saturation witness vanished".into()))
}

/// One-object strict 2-category with a single 1-cell and a ℤ/2 group of
/// 2-cells on it; the smallest ambient whose localization is not thin.
pub fn loop_z2() -> FinBicategory {
    let mut comp1 = HashMap::new();
    comp1.insert((OneId(0), OneId(0)), OneId(0));
    let mut vcomp = HashMap::new();
    let mut hcomp = HashMap::new();
    for x in 0..2u16 {
        for y in 0..2u16 {
            let out = CellId((x + y) % 2);
            vcomp.insert((CellId(x), CellId(y)), out);
            hcomp.insert((CellId(x), CellId(y)), out);
        }
    }
    let mut assoc = HashMap::new();
    assoc.insert((OneId(0), OneId(0), OneId(0)), CellId(0));
    FinBicategory::from_parts(
        BicatParts {
            name: "LOOP-Z2".into(),
            objects: vec!["pt".into()],
            ones: vec![OneData {
                name: "id_pt".into(),
                src: ObjId(0),
                tgt: ObjId(0),
            }],
            cells: vec![
                CellData {
                    name: "i".into(),
                    src: OneId(0),
                    tgt: OneId(0),
                },
                CellData {
                    name: "g".into(),
                    src: OneId(0),
                    tgt: OneId(0),
                },
            ],
            id1: vec![OneId(0)],
            id2: vec![CellId(0)],
            comp1,
            vcomp,
            hcomp,
            assoc,
            runitor: vec![CellId(0)],
            lunitor: vec![CellId(0)],
            strict: true,
        },
        &SizeCaps::default(),
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicat::validate_bicategory;
    use crate::cf_fractions;
    use crate::fincat;

    fn trivial_with(
        c: &FinCategory,
        w: &MorClass,
    ) -> (FinBicategory, OneClass) {
        let b = FinBicategory::from_trivial(c);
        let wc = OneClass::from_mor_class(c, &b, w).unwrap();
        (b, wc)
    }

    fn localize_c3(b: &FinBicategory, w: &OneClass) -> Localization {
        let choices = build_choice_table(b, w, ChoicePolicy::C3).unwrap();
        localize_bicategory(b, w, &choices, &SizeCaps::default()).unwrap()
    }

    #[test]
    fn axioms_agree_with_one_categorical_checker() {
        let cases: Vec<(FinCategory, Vec<MorClass>)> = vec![
            (fincat::arrow(), vec![]),
            (fincat::diamond(), vec![]),
            (fincat::double_diamond(), vec![]),
            (fincat::parallel(), vec![]),
            (fincat::z2grp(), vec![]),
            (fincat::fork(), vec![]),
        ];
        for (c, _) in cases {
            let mut variants = vec![MorClass::identities(&c), MorClass::all(&c)];
            // One mixed variant: identities plus the first non-identity.
            if let Some(m) = c.mor_ids().find(|&m| !c.is_identity(m)) {
                let mut mem: Vec<_> = c.objects().map(|a| c.id(a)).collect();
                mem.push(m);
                variants.push(MorClass::new(&c, mem).unwrap());
            }
            for w in variants {
                let cf = cf_fractions::check_cf_axioms(&c, &w).unwrap();
                let (b, wc) = trivial_with(&c, &w);
                let bf = check_bf_axioms(&b, &wc).unwrap();
                assert_eq!(cf.cf1.pass, bf.bf1.pass, "{}", c.name);
                assert_eq!(cf.cf2.pass, bf.bf2.pass, "{}", c.name);
                assert_eq!(cf.cf3.pass, bf.bf3.pass, "{}", c.name);
                assert_eq!(cf.cf4.pass, bf.bf4a.pass, "{}", c.name);
            }
        }
    }

    #[test]
    fn arrow_all_passes_and_diamond_variant_fails_square_completion() {
        let c = fincat::arrow();
        let (b, wc) = trivial_with(&c, &fincat::arrow_w(&c));
        assert!(check_bf_axioms(&b, &wc).unwrap().all_pass());

        let d = fincat::diamond();
        let mut mem: Vec<_> = d.objects().map(|a| d.id(a)).collect();
        mem.push(d.mor_by_name("b1a").unwrap());
        let w = MorClass::new(&d, mem).unwrap();
        let (bd, wd) = trivial_with(&d, &w);
        let rep = check_bf_axioms(&bd, &wd).unwrap();
        assert!(!rep.bf3.pass);
        assert!(rep.bf1.pass && rep.bf2.pass);
    }

    #[test]
    fn z2grp_all_passes() {
        let c = fincat::z2grp();
        let (b, wc) = trivial_with(&c, &MorClass::all(&c));
        assert!(check_bf_axioms(&b, &wc).unwrap().all_pass());
    }

    #[test]
    fn identity_class_choice_table_uses_identity_legs() {
        let c = fincat::diamond();
        let (b, wc) = trivial_with(&c, &MorClass::identities(&c));
        let table = build_choice_table(&b, &wc, ChoicePolicy::C3).unwrap();
        for f in b.one_ids() {
            let v = b.id1(b.one_tgt(f));
            let e = table.get(f, v).unwrap();
            assert_eq!(e.apex, b.one_src(f));
            assert_eq!(e.f_prime, f);
            assert_eq!(e.v_prime, b.id1(b.one_src(f)));
            assert_eq!(e.rho, b.id2(f));
        }
    }

    #[test]
    fn diagonal_choice_entry_depends_on_policy() {
        let c = fincat::arrow();
        let (b, wc) = trivial_with(&c, &fincat::arrow_w(&c));
        let ww = b.one_by_name("w").unwrap();
        let c3 = build_choice_table(&b, &wc, ChoicePolicy::C3).unwrap();
        let e = c3.get(ww, ww).unwrap();
        assert_eq!(e.apex, b.one_src(ww));
        assert_eq!(e.v_prime, b.id1(e.apex));
        assert_eq!(e.f_prime, b.id1(e.apex));
        let lex = build_choice_table(&b, &wc, ChoicePolicy::Lex).unwrap();
        let el = lex.get(ww, ww).unwrap();
        // The least square completion for (w, w) sits over X with both legs
        // the identity of X.
        assert_eq!(el.apex, b.one_src(ww));
        assert_eq!(el.v_prime, b.id1(el.apex));
    }

    #[test]
    fn localized_fixtures_validate() {
        let cases: Vec<(FinCategory, MorClass)> = vec![
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
                let c = fincat::diamond();
                let w = MorClass::identities(&c);
                (c, w)
            },
        ];
        for (c, w) in cases {
            let (b, wc) = trivial_with(&c, &w);
            let loc = localize_c3(&b, &wc);
            assert!(!loc.bicat.strict);
            let report = validate_bicategory(&loc.bicat);
            assert!(report.ok(), "{}: {:?}", loc.bicat.name, report.violations);
        }
    }

    #[test]
    fn localized_arrow_parallel_triples_have_unique_invertible_cell() {
        let c = fincat::arrow();
        let (b, wc) = trivial_with(&c, &fincat::arrow_w(&c));
        let loc = localize_c3(&b, &wc);
        let y = b.obj_by_name("Y").unwrap();
        let idy = TripleMor {
            apex: y,
            w: b.id1(y),
            f: b.id1(y),
        };
        let ww = b.one_by_name("w").unwrap();
        let xww = TripleMor {
            apex: b.obj_by_name("X").unwrap(),
            w: ww,
            f: ww,
        };
        let a = loc.one_of(&idy).unwrap();
        let bb = loc.one_of(&xww).unwrap();
        let cells = loc.bicat.cells_between(a, bb);
        assert_eq!(cells.len(), 1);
        assert!(loc.bicat.is_invertible(cells[0]));
    }

    #[test]
    fn localized_arrow_inverse_is_internal_equivalence() {
        let c = fincat::arrow();
        let (b, wc) = trivial_with(&c, &fincat::arrow_w(&c));
        let loc = localize_c3(&b, &wc);
        let x = b.obj_by_name("X").unwrap();
        let ww = b.one_by_name("w").unwrap();
        let fwd = loc
            .one_of(&TripleMor {
                apex: x,
                w: b.id1(x),
                f: ww,
            })
            .unwrap();
        let bwd = loc
            .one_of(&TripleMor {
                apex: x,
                w: ww,
                f: b.id1(x),
            })
            .unwrap();
        let data = crate::bicat::find_internal_equivalence(&loc.bicat, fwd).unwrap();
        assert_eq!(data.d, bwd);
        assert!(crate::bicat::find_internal_equivalence(&loc.bicat, bwd).is_some());
    }

    #[test]
    fn two_cell_existence_matches_span_classes() {
        let c = fincat::diamond();
        let w = fincat::diamond_w(&c);
        let (b, wc) = trivial_with(&c, &w);
        let loc = localize_c3(&b, &wc);
        let frac = cf_fractions::localize(&c, &w).unwrap();
        for (i, t1) in loc.triples.iter().enumerate() {
            for (j, t2) in loc.triples.iter().enumerate() {
                if t1.source(&b) != t2.source(&b) || t1.target(&b) != t2.target(&b) {
                    continue;
                }
                let s1 = cf_fractions::Span {
                    apex: t1.apex,
                    leg_w: crate::fincat::MorId(t1.w.0),
                    leg_f: crate::fincat::MorId(t1.f.0),
                };
                let s2 = cf_fractions::Span {
                    apex: t2.apex,
                    leg_w: crate::fincat::MorId(t2.w.0),
                    leg_f: crate::fincat::MorId(t2.f.0),
                };
                let same = frac.class_of_span(&s1) == frac.class_of_span(&s2);
                let cells = loc.bicat.cells_between(OneId(i as u16), OneId(j as u16));
                if same {
                    assert_eq!(cells.len(), 1);
                    assert!(loc.bicat.is_invertible(cells[0]));
                } else {
                    assert!(cells.is_empty());
                }
            }
        }
    }

    #[test]
    fn quintuple_relation_examples() {
        let c = fincat::arrow();
        let (b, wc) = trivial_with(&c, &fincat::arrow_w(&c));
        let x = b.obj_by_name("X").unwrap();
        let ww = b.one_by_name("w").unwrap();
        let t = TripleMor {
            apex: x,
            w: ww,
            f: ww,
        };
        let rep = QuintupleRep {
            apex: x,
            v1: b.id1(x),
            v2: b.id1(x),
            alpha: b.id2(ww),
            beta: b.id2(ww),
        };
        assert!(two_cells_equivalent(&b, &wc, &t, &t, &rep, &rep).unwrap());
    }

    #[test]
    fn saturation_witness_examples() {
        let c = fincat::arrow();
        let (b, wc) = trivial_with(&c, &fincat::arrow_w(&c));
        let x = b.obj_by_name("X").unwrap();
        let y = b.obj_by_name("Y").unwrap();
        let ww = b.one_by_name("w").unwrap();
        // v = id: trivial witness.
        let (d, z) = right_saturation_witness(&b, &wc, ww, b.id1(x)).unwrap();
        assert_eq!((d, z), (x, b.id1(x)));
        // w = id_Y, v = w.
        let (d, z) = right_saturation_witness(&b, &wc, b.id1(y), ww).unwrap();
        assert_eq!((d, z), (x, b.id1(x)));
        // Precondition violation: w ∉ W.
        let ids = OneClass::identities(&b);
        assert!(matches!(
            right_saturation_witness(&b, &ids, ww, b.id1(x)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn associator_with_identity_left_pair_is_identity() {
        // Triples ((B,id,f),(C,id,g),(D,w,h)) have an identity associator.
        let c = fincat::diamond();
        let w = fincat::diamond_w(&c);
        let (b, wc) = trivial_with(&c, &w);
        let loc = localize_c3(&b, &wc);
        for t1 in &loc.triples {
            // t1 is the innermost; its w-leg may be any W element.
            for t2 in &loc.triples {
                if t2.w != b.id1(t2.apex) || t1.target(&b) != t2.source(&b) {
                    continue;
                }
                for t3 in &loc.triples {
                    if t3.w != b.id1(t3.apex) || t2.target(&b) != t3.source(&b) {
                        continue;
                    }
                    let th = loc
                        .bicat
                        .th(
                            loc.one_of(t3).unwrap(),
                            loc.one_of(t2).unwrap(),
                            loc.one_of(t1).unwrap(),
                        )
                        .unwrap();
                    assert_eq!(th, loc.bicat.id2(loc.bicat.cell_src(th)));
                }
            }
        }
    }

    #[test]
    fn loop_z2_is_a_valid_ambient_and_localizes_to_itself() {
        let b = loop_z2();
        let report = validate_bicategory(&b);
        assert!(report.ok(), "{:?}", report.violations);
        let w = OneClass::identities(&b);
        assert!(check_bf_axioms(&b, &w).unwrap().all_pass());
        let loc = localize_c3(&b, &w);
        let out = validate_bicategory(&loc.bicat);
        assert!(out.ok(), "{:?}", out.violations);
        // One 1-cell, two 2-cells on it, forming ℤ/2 under both compositions.
        assert_eq!(loc.bicat.n_ones(), 1);
        assert_eq!(loc.bicat.n_cells(), 2);
        let one = OneId(0);
        let cells = loc.bicat.cells_between(one, one);
        let nonid: Vec<_> = cells
            .iter()
            .copied()
            .filter(|&c2| c2 != loc.bicat.id2(one))
            .collect();
        assert_eq!(nonid.len(), 1);
        let g = nonid[0];
        assert_eq!(loc.bicat.v(g, g).unwrap(), loc.bicat.id2(one));
        assert_eq!(loc.bicat.h(g, g).unwrap(), loc.bicat.id2(one));
    }

    #[test]
    fn choice_independence_on_class_data() {
        for (c, w) in [
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
        ] {
            let (b, wc) = trivial_with(&c, &w);
            let t_lex = build_choice_table(&b, &wc, ChoicePolicy::Lex).unwrap();
            let t_c3 = build_choice_table(&b, &wc, ChoicePolicy::C3).unwrap();
            let l1 = localize_bicategory(&b, &wc, &t_lex, &SizeCaps::default()).unwrap();
            let l2 = localize_bicategory(&b, &wc, &t_c3, &SizeCaps::default()).unwrap();
            assert_eq!(l1.triples, l2.triples);
            assert_eq!(l1.classes.len(), l2.classes.len());
            for (c1d, c2d) in l1.classes.iter().zip(&l2.classes) {
                assert_eq!(c1d.src, c2d.src);
                assert_eq!(c1d.tgt, c2d.tgt);
                assert_eq!(c1d.members, c2d.members);
            }
        }
    }
}
