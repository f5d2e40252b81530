//! Finite bicategories and the weak-fiber-product checker.
//!
//! Strict 2-categories are the supported *input* path (all associators and
//! unitors are identity 2-cells); non-strict instances arise as outputs of the
//! localization and carry explicit associator/unitor tables.  All laws —
//! interchange, pentagon, triangle, naturality — are checked exhaustively by
//! [`validate_bicategory`], never assumed.
//!
//! Equation shapes follow the printed composites with associators and unitors
//! inserted in the type-forced orientation; in a strict ambient they all
//! collapse to identities.

use std::collections::HashMap;

use crate::fincat::{FinCategory, ObjId};
use crate::{Error, Result};

/// Size caps for full weak-fiber-product sweeps; raisable at user risk.
#[derive(Copy, Clone, Debug)]
pub struct SizeCaps {
    pub objects: usize,
    pub ones: usize,
    pub cells: usize,
}

impl Default for SizeCaps {
    fn default() -> Self {
        SizeCaps {
            objects: 8,
            ones: 64,
            cells: 256,
        }
    }
}

impl SizeCaps {
    /// Caps scaled for a requested object budget (1-cell/2-cell budgets scale
    /// proportionally).
    pub fn for_objects(n: usize) -> Self {
        let d = SizeCaps::default();
        let k = (n + d.objects - 1) / d.objects;
        SizeCaps {
            objects: n.max(d.objects),
            ones: d.ones * k.max(1),
            cells: d.cells * k.max(1),
        }
    }
}

/// Ordinal of a 1-cell within its bicategory.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct OneId(pub u16);

/// Ordinal of a 2-cell within its bicategory.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CellId(pub u16);

#[derive(Clone, Debug)]
pub struct OneData {
    pub name: String,
    pub src: ObjId,
    pub tgt: ObjId,
}

#[derive(Clone, Debug)]
pub struct CellData {
    pub name: String,
    pub src: OneId,
    pub tgt: OneId,
}

/// A finite bicategory given by explicit tables.
#[derive(Clone, Debug)]
pub struct FinBicategory {
    pub name: String,
    objects: Vec<String>,
    ones: Vec<OneData>,
    cells: Vec<CellData>,
    id1: Vec<OneId>,
    id2: Vec<CellId>,
    comp1: HashMap<(OneId, OneId), OneId>,
    vcomp: HashMap<(CellId, CellId), CellId>,
    hcomp: HashMap<(CellId, CellId), CellId>,
    assoc: HashMap<(OneId, OneId, OneId), CellId>,
    runitor: Vec<CellId>,
    lunitor: Vec<CellId>,
    pub strict: bool,
}

/// All table inputs for [`FinBicategory::from_parts`].
pub struct BicatParts {
    pub name: String,
    pub objects: Vec<String>,
    pub ones: Vec<OneData>,
    pub cells: Vec<CellData>,
    pub id1: Vec<OneId>,
    pub id2: Vec<CellId>,
    pub comp1: HashMap<(OneId, OneId), OneId>,
    pub vcomp: HashMap<(CellId, CellId), CellId>,
    pub hcomp: HashMap<(CellId, CellId), CellId>,
    pub assoc: HashMap<(OneId, OneId, OneId), CellId>,
    pub runitor: Vec<CellId>,
    pub lunitor: Vec<CellId>,
    pub strict: bool,
}

impl FinBicategory {
    /// Promote a finite category to a trivial 2-category: same objects, 1-cells
    /// the morphisms with identical ordinals, one identity 2-cell per 1-cell.
    pub fn from_trivial(c: &FinCategory) -> Self {
        let objects: Vec<String> = c.objects().map(|a| c.object_name(a).to_string()).collect();
        let ones: Vec<OneData> = c
            .mor_ids()
            .map(|m| OneData {
                name: c.mor_name(m).to_string(),
                src: c.src(m),
                tgt: c.tgt(m),
            })
            .collect();
        let cells: Vec<CellData> = c
            .mor_ids()
            .map(|m| CellData {
                name: format!("i_{}", c.mor_name(m)),
                src: OneId(m.0),
                tgt: OneId(m.0),
            })
            .collect();
        let id1: Vec<OneId> = c.objects().map(|a| OneId(c.id(a).0)).collect();
        let id2: Vec<CellId> = (0..ones.len() as u16).map(CellId).collect();
        let mut comp1 = HashMap::new();
        let mut vcomp = HashMap::new();
        let mut hcomp = HashMap::new();
        let mut assoc = HashMap::new();
        for g in c.mor_ids() {
            for f in c.mor_ids() {
                if c.tgt(f) != c.src(g) {
                    continue;
                }
                let h = crate::fincat::compose(c, g, f).unwrap();
                comp1.insert((OneId(g.0), OneId(f.0)), OneId(h.0));
                hcomp.insert((CellId(g.0), CellId(f.0)), CellId(h.0));
            }
        }
        for m in c.mor_ids() {
            vcomp.insert((CellId(m.0), CellId(m.0)), CellId(m.0));
        }
        for h in c.mor_ids() {
            for g in c.mor_ids() {
                if c.tgt(g) != c.src(h) {
                    continue;
                }
                for f in c.mor_ids() {
                    if c.tgt(f) != c.src(g) {
                        continue;
                    }
                    let hgf = crate::fincat::compose(
                        c,
                        h,
                        crate::fincat::compose(c, g, f).unwrap(),
                    )
                    .unwrap();
                    assoc.insert((OneId(h.0), OneId(g.0), OneId(f.0)), CellId(hgf.0));
                }
            }
        }
        let runitor = id2.clone();
        let lunitor = id2.clone();
        FinBicategory {
            name: c.name.clone(),
            objects,
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
            strict: true,
        }
    }

    /// Build from explicit tables, with structural checks only (laws are the
    /// business of [`validate_bicategory`]).
    pub fn from_parts(p: BicatParts, caps: &SizeCaps) -> Result<Self> {
        if p.objects.len() > caps.objects {
            return Err(Error::SizeLimit(format!("{} objects", p.objects.len())));
        }
        if p.ones.len() > caps.ones {
            return Err(Error::SizeLimit(format!("{} one-cells", p.ones.len())));
        }
        if p.cells.len() > caps.cells {
            return Err(Error::SizeLimit(format!("{} two-cells", p.cells.len())));
        }
        let b = FinBicategory {
            name: p.name,
            objects: p.objects,
            ones: p.ones,
            cells: p.cells,
            id1: p.id1,
            id2: p.id2,
            comp1: p.comp1,
            vcomp: p.vcomp,
            hcomp: p.hcomp,
            assoc: p.assoc,
            runitor: p.runitor,
            lunitor: p.lunitor,
            strict: p.strict,
        };
        b.check_structure()?;
        Ok(b)
    }

    fn check_structure(&self) -> Result<()> {
        let no = self.objects.len();
        for f in &self.ones {
            if f.src.0 as usize >= no || f.tgt.0 as usize >= no {
                return Err(Error::Structure(format!("dangling object in `{}`", f.name)));
            }
        }
        for a in &self.cells {
            if a.src.0 as usize >= self.ones.len() || a.tgt.0 as usize >= self.ones.len() {
                return Err(Error::Structure(format!("dangling 1-cell in `{}`", a.name)));
            }
            let s = &self.ones[a.src.0 as usize];
            let t = &self.ones[a.tgt.0 as usize];
            if s.src != t.src || s.tgt != t.tgt {
                return Err(Error::Structure(format!(
                    "2-cell `{}` between non-parallel 1-cells",
                    a.name
                )));
            }
        }
        if self.id1.len() != no
            || self.id2.len() != self.ones.len()
            || self.runitor.len() != self.ones.len()
            || self.lunitor.len() != self.ones.len()
        {
            return Err(Error::Structure("identity/unitor table size mismatch".into()));
        }
        // Totality of comp1 / vcomp / hcomp / assoc over their defining shapes.
        for g in self.one_ids() {
            for f in self.one_ids() {
                if self.one_src(g) == self.one_tgt(f) && !self.comp1.contains_key(&(g, f)) {
                    return Err(Error::Structure(format!(
                        "missing 1-composite `{}` after `{}`",
                        self.one_name(g),
                        self.one_name(f)
                    )));
                }
            }
        }
        for b2 in self.cell_ids() {
            for a in self.cell_ids() {
                if self.cell_tgt(a) == self.cell_src(b2) && !self.vcomp.contains_key(&(b2, a)) {
                    return Err(Error::Structure(format!(
                        "missing vertical composite `{}` after `{}`",
                        self.cell_name(b2),
                        self.cell_name(a)
                    )));
                }
                let fa = self.cell_src(a);
                let fb = self.cell_src(b2);
                if self.one_tgt(fa) == self.one_src(fb) && !self.hcomp.contains_key(&(b2, a)) {
                    return Err(Error::Structure(format!(
                        "missing horizontal composite `{}` beside `{}`",
                        self.cell_name(b2),
                        self.cell_name(a)
                    )));
                }
            }
        }
        for h in self.one_ids() {
            for g in self.one_ids() {
                if self.one_tgt(g) != self.one_src(h) {
                    continue;
                }
                for f in self.one_ids() {
                    if self.one_tgt(f) != self.one_src(g) {
                        continue;
                    }
                    if !self.assoc.contains_key(&(h, g, f)) {
                        return Err(Error::Structure("missing associator entry".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }
    pub fn n_ones(&self) -> usize {
        self.ones.len()
    }
    pub fn n_cells(&self) -> usize {
        self.cells.len()
    }
    pub fn objects(&self) -> impl Iterator<Item = ObjId> {
        (0..self.objects.len() as u16).map(ObjId)
    }
    pub fn one_ids(&self) -> impl Iterator<Item = OneId> {
        (0..self.ones.len() as u16).map(OneId)
    }
    pub fn cell_ids(&self) -> impl Iterator<Item = CellId> {
        (0..self.cells.len() as u16).map(CellId)
    }
    pub fn object_name(&self, a: ObjId) -> &str {
        &self.objects[a.0 as usize]
    }
    pub fn one_name(&self, f: OneId) -> &str {
        &self.ones[f.0 as usize].name
    }
    pub fn cell_name(&self, a: CellId) -> &str {
        &self.cells[a.0 as usize].name
    }
    pub fn one_src(&self, f: OneId) -> ObjId {
        self.ones[f.0 as usize].src
    }
    pub fn one_tgt(&self, f: OneId) -> ObjId {
        self.ones[f.0 as usize].tgt
    }
    pub fn cell_src(&self, a: CellId) -> OneId {
        self.cells[a.0 as usize].src
    }
    pub fn cell_tgt(&self, a: CellId) -> OneId {
        self.cells[a.0 as usize].tgt
    }
    pub fn id1(&self, a: ObjId) -> OneId {
        self.id1[a.0 as usize]
    }
    pub fn id2(&self, f: OneId) -> CellId {
        self.id2[f.0 as usize]
    }
    pub fn obj_by_name(&self, n: &str) -> Option<ObjId> {
        self.objects
            .iter()
            .position(|o| o == n)
            .map(|i| ObjId(i as u16))
    }
    pub fn one_by_name(&self, n: &str) -> Option<OneId> {
        self.ones
            .iter()
            .position(|o| o.name == n)
            .map(|i| OneId(i as u16))
    }
    pub fn cell_by_name(&self, n: &str) -> Option<CellId> {
        self.cells
            .iter()
            .position(|o| o.name == n)
            .map(|i| CellId(i as u16))
    }

    /// 1-cells from `a` to `b`, in ordinal order.
    pub fn hom1(&self, a: ObjId, b: ObjId) -> Vec<OneId> {
        self.one_ids()
            .filter(|&f| self.one_src(f) == a && self.one_tgt(f) == b)
            .collect()
    }

    /// 2-cells from `f` to `g`, in ordinal order.
    pub fn cells_between(&self, f: OneId, g: OneId) -> Vec<CellId> {
        self.cell_ids()
            .filter(|&a| self.cell_src(a) == f && self.cell_tgt(a) == g)
            .collect()
    }

    /// g∘f.
    pub fn c1(&self, g: OneId, f: OneId) -> Result<OneId> {
        if self.one_tgt(f) != self.one_src(g) {
            return Err(Error::NonComposable(format!(
                "1-cells `{}` after `{}`",
                self.one_name(g),
                self.one_name(f)
            )));
        }
        self.comp1
            .get(&(g, f))
            .copied()
            .ok_or_else(|| Error::Structure("missing 1-composite".into()))
    }

    /// b⊙a (vertical).
    pub fn v(&self, b: CellId, a: CellId) -> Result<CellId> {
        if self.cell_tgt(a) != self.cell_src(b) {
            return Err(Error::NonComposable(format!(
                "2-cells `{}` ⊙ `{}`",
                self.cell_name(b),
                self.cell_name(a)
            )));
        }
        self.vcomp
            .get(&(b, a))
            .copied()
            .ok_or_else(|| Error::Structure("missing vertical composite".into()))
    }

    /// b∗a (horizontal; `a` on the source side).
    pub fn h(&self, b: CellId, a: CellId) -> Result<CellId> {
        let fa = self.cell_src(a);
        let fb = self.cell_src(b);
        if self.one_tgt(fa) != self.one_src(fb) {
            return Err(Error::NonComposable(format!(
                "2-cells `{}` ∗ `{}`",
                self.cell_name(b),
                self.cell_name(a)
            )));
        }
        self.hcomp
            .get(&(b, a))
            .copied()
            .ok_or_else(|| Error::Structure("missing horizontal composite".into()))
    }

    /// Left whiskering i_g ∗ a.
    pub fn wl(&self, g: OneId, a: CellId) -> Result<CellId> {
        self.h(self.id2(g), a)
    }

    /// Right whiskering a ∗ i_f.
    pub fn wr(&self, a: CellId, f: OneId) -> Result<CellId> {
        self.h(a, self.id2(f))
    }

    /// Associator θ_{h,g,f}: h∘(g∘f) ⇒ (h∘g)∘f.
    pub fn th(&self, h: OneId, g: OneId, f: OneId) -> Result<CellId> {
        self.assoc
            .get(&(h, g, f))
            .copied()
            .ok_or_else(|| Error::Structure("missing associator".into()))
    }

    /// Inverse associator (h∘g)∘f ⇒ h∘(g∘f).
    pub fn th_inv(&self, h: OneId, g: OneId, f: OneId) -> Result<CellId> {
        let t = self.th(h, g, f)?;
        self.inverse(t)
            .ok_or_else(|| Error::Structure("associator not invertible".into()))
    }

    /// Right unitor π_f: f∘id ⇒ f.
    pub fn runit(&self, f: OneId) -> CellId {
        self.runitor[f.0 as usize]
    }

    /// Left unitor υ_f: id∘f ⇒ f.
    pub fn lunit(&self, f: OneId) -> CellId {
        self.lunitor[f.0 as usize]
    }

    /// Two-sided inverse of a 2-cell under ⊙, if any.
    pub fn inverse(&self, a: CellId) -> Option<CellId> {
        let f = self.cell_src(a);
        let g = self.cell_tgt(a);
        self.cells_between(g, f).into_iter().find(|&b| {
            self.vcomp.get(&(b, a)) == Some(&self.id2(f))
                && self.vcomp.get(&(a, b)) == Some(&self.id2(g))
        })
    }

    pub fn is_invertible(&self, a: CellId) -> bool {
        self.inverse(a).is_some()
    }

    /// Vertical composite of a chain given in application order:
    /// `vchain([a, b, c]) = c ⊙ b ⊙ a`.
    pub fn vchain(&self, cells: &[CellId]) -> Result<CellId> {
        let mut it = cells.iter();
        let mut acc = *it
            .next()
            .ok_or_else(|| Error::Precondition("empty chain".into()))?;
        for &next in it {
            acc = self.v(next, acc)?;
        }
        Ok(acc)
    }
}

/// A law violation in a bicategory, with a human-readable witness.
#[derive(Clone, Debug)]
pub struct BicatViolation {
    pub law: &'static str,
    pub witness: String,
}

/// Result of [`validate_bicategory`]; `ok` iff no violations.
#[derive(Clone, Debug)]
pub struct BicatReport {
    pub violations: Vec<BicatViolation>,
}

impl BicatReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustively check every bicategory law on explicit tables: vertical
/// category laws, interchange, invertibility and typing of θ/π/υ, pentagon,
/// triangle, naturality, and the strictness contract when `strict` is set.
pub fn validate_bicategory(b: &FinBicategory) -> BicatReport {
    let mut out: Vec<BicatViolation> = Vec::new();
    let mut push = |law: &'static str, witness: String| out.push(BicatViolation { law, witness });

    // comp1 endpoint correctness; identity 1-cells endpoint correctness.
    for a in b.objects() {
        let i = b.id1(a);
        if b.one_src(i) != a || b.one_tgt(i) != a {
            push("id1-endpoints", b.object_name(a).to_string());
        }
    }
    for g in b.one_ids() {
        for f in b.one_ids() {
            if b.one_tgt(f) != b.one_src(g) {
                continue;
            }
            let h = b.c1(g, f).unwrap();
            if b.one_src(h) != b.one_src(f) || b.one_tgt(h) != b.one_tgt(g) {
                push("comp1-endpoints", format!("{}∘{}", b.one_name(g), b.one_name(f)));
            }
        }
    }
    // id2 typing; vertical units.
    for f in b.one_ids() {
        let i = b.id2(f);
        if b.cell_src(i) != f || b.cell_tgt(i) != f {
            push("id2-endpoints", b.one_name(f).to_string());
        }
    }
    for a in b.cell_ids() {
        let i_s = b.id2(b.cell_src(a));
        let i_t = b.id2(b.cell_tgt(a));
        if b.v(a, i_s).ok() != Some(a) {
            push("vcomp-right-unit", b.cell_name(a).to_string());
        }
        if b.v(i_t, a).ok() != Some(a) {
            push("vcomp-left-unit", b.cell_name(a).to_string());
        }
    }
    // Vertical composition endpoints + associativity.
    for b2 in b.cell_ids() {
        for a in b.cell_ids() {
            if b.cell_tgt(a) != b.cell_src(b2) {
                continue;
            }
            let c = b.v(b2, a).unwrap();
            if b.cell_src(c) != b.cell_src(a) || b.cell_tgt(c) != b.cell_tgt(b2) {
                push(
                    "vcomp-endpoints",
                    format!("{}⊙{}", b.cell_name(b2), b.cell_name(a)),
                );
            }
            for c2 in b.cell_ids() {
                if b.cell_tgt(b2) != b.cell_src(c2) {
                    continue;
                }
                let left = b.v(c2, b.v(b2, a).unwrap()).unwrap();
                let right = b.v(b.v(c2, b2).unwrap(), a).unwrap();
                if left != right {
                    push(
                        "vcomp-associativity",
                        format!(
                            "{}⊙{}⊙{}",
                            b.cell_name(c2),
                            b.cell_name(b2),
                            b.cell_name(a)
                        ),
                    );
                }
            }
        }
    }
    // Horizontal composition endpoints; identity 2-cells compose to identity.
    for b2 in b.cell_ids() {
        for a in b.cell_ids() {
            if b.one_tgt(b.cell_src(a)) != b.one_src(b.cell_src(b2)) {
                continue;
            }
            let c = b.h(b2, a).unwrap();
            let want_src = b.c1(b.cell_src(b2), b.cell_src(a)).unwrap();
            let want_tgt = b.c1(b.cell_tgt(b2), b.cell_tgt(a)).unwrap();
            if b.cell_src(c) != want_src || b.cell_tgt(c) != want_tgt {
                push(
                    "hcomp-endpoints",
                    format!("{}∗{}", b.cell_name(b2), b.cell_name(a)),
                );
            }
        }
    }
    for g in b.one_ids() {
        for f in b.one_ids() {
            if b.one_tgt(f) != b.one_src(g) {
                continue;
            }
            let lhs = b.h(b.id2(g), b.id2(f)).unwrap();
            if lhs != b.id2(b.c1(g, f).unwrap()) {
                push(
                    "hcomp-identities",
                    format!("i_{}∗i_{}", b.one_name(g), b.one_name(f)),
                );
            }
        }
    }
    // Interchange: (δ∗β)⊙(γ∗α) = (δ⊙γ)∗(β⊙α).  Ill-typed table entries
    // surface as endpoint violations above; the law loops skip combinations
    // they poison instead of aborting.
    for gamma in b.cell_ids() {
        for delta in b.cell_ids() {
            if b.cell_tgt(gamma) != b.cell_src(delta) {
                continue;
            }
            for alpha in b.cell_ids() {
                if b.one_tgt(b.cell_src(alpha)) != b.one_src(b.cell_src(gamma)) {
                    continue;
                }
                for beta in b.cell_ids() {
                    if b.cell_tgt(alpha) != b.cell_src(beta) {
                        continue;
                    }
                    let lhs = b
                        .h(delta, beta)
                        .and_then(|x| b.h(gamma, alpha).and_then(|y| b.v(x, y)));
                    let rhs = b
                        .v(delta, gamma)
                        .and_then(|x| b.v(beta, alpha).and_then(|y| b.h(x, y)));
                    let (lhs, rhs) = match (lhs, rhs) {
                        (Ok(l), Ok(r)) => (l, r),
                        _ => continue,
                    };
                    if lhs != rhs {
                        push(
                            "interchange",
                            format!(
                                "δ={} γ={} β={} α={}",
                                b.cell_name(delta),
                                b.cell_name(gamma),
                                b.cell_name(beta),
                                b.cell_name(alpha)
                            ),
                        );
                    }
                }
            }
        }
    }
    // θ typing + invertibility.
    for h in b.one_ids() {
        for g in b.one_ids() {
            if b.one_tgt(g) != b.one_src(h) {
                continue;
            }
            for f in b.one_ids() {
                if b.one_tgt(f) != b.one_src(g) {
                    continue;
                }
                let t = b.th(h, g, f).unwrap();
                let want_src = b.c1(h, b.c1(g, f).unwrap()).unwrap();
                let want_tgt = b.c1(b.c1(h, g).unwrap(), f).unwrap();
                if b.cell_src(t) != want_src || b.cell_tgt(t) != want_tgt {
                    push(
                        "assoc-endpoints",
                        format!("θ[{},{},{}]", b.one_name(h), b.one_name(g), b.one_name(f)),
                    );
                } else if !b.is_invertible(t) {
                    push(
                        "assoc-invertible",
                        format!("θ[{},{},{}]", b.one_name(h), b.one_name(g), b.one_name(f)),
                    );
                }
            }
        }
    }
    // Unitor typing + invertibility.
    for f in b.one_ids() {
        let r = b.runit(f);
        let want = b.c1(f, b.id1(b.one_src(f))).unwrap();
        if b.cell_src(r) != want || b.cell_tgt(r) != f {
            push("runitor-endpoints", b.one_name(f).to_string());
        } else if !b.is_invertible(r) {
            push("runitor-invertible", b.one_name(f).to_string());
        }
        let l = b.lunit(f);
        let want = b.c1(b.id1(b.one_tgt(f)), f).unwrap();
        if b.cell_src(l) != want || b.cell_tgt(l) != f {
            push("lunitor-endpoints", b.one_name(f).to_string());
        } else if !b.is_invertible(l) {
            push("lunitor-invertible", b.one_name(f).to_string());
        }
    }
    // Pentagon.
    for k in b.one_ids() {
        for h in b.one_ids() {
            if b.one_tgt(h) != b.one_src(k) {
                continue;
            }
            for g in b.one_ids() {
                if b.one_tgt(g) != b.one_src(h) {
                    continue;
                }
                for f in b.one_ids() {
                    if b.one_tgt(f) != b.one_src(g) {
                        continue;
                    }
                    let sides = (|| -> Result<(CellId, CellId)> {
                        let hg = b.c1(h, g)?;
                        let gf = b.c1(g, f)?;
                        let kh = b.c1(k, h)?;
                        let lhs = b.vchain(&[
                            b.wl(k, b.th(h, g, f)?)?,
                            b.th(k, hg, f)?,
                            b.wr(b.th(k, h, g)?, f)?,
                        ])?;
                        let rhs = b.vchain(&[b.th(k, h, gf)?, b.th(kh, g, f)?])?;
                        Ok((lhs, rhs))
                    })();
                    let (lhs, rhs) = match sides {
                        Ok(p) => p,
                        Err(_) => continue,
                    };
                    if lhs != rhs {
                        push(
                            "pentagon",
                            format!(
                                "({},{},{},{})",
                                b.one_name(k),
                                b.one_name(h),
                                b.one_name(g),
                                b.one_name(f)
                            ),
                        );
                    }
                }
            }
        }
    }
    // Triangle: (π_g ∗ i_f) ⊙ θ_{g,id,f} = i_g ∗ υ_f.
    for g in b.one_ids() {
        for f in b.one_ids() {
            if b.one_tgt(f) != b.one_src(g) {
                continue;
            }
            let mid = b.id1(b.one_src(g));
            let sides = (|| -> Result<(CellId, CellId)> {
                let lhs = b.v(b.wr(b.runit(g), f)?, b.th(g, mid, f)?)?;
                let rhs = b.wl(g, b.lunit(f))?;
                Ok((lhs, rhs))
            })();
            let (lhs, rhs) = match sides {
                Ok(p) => p,
                Err(_) => continue,
            };
            if lhs != rhs {
                push("triangle", format!("({},{})", b.one_name(g), b.one_name(f)));
            }
        }
    }
    // Naturality of θ in all three arguments.
    for gamma in b.cell_ids() {
        for beta in b.cell_ids() {
            if b.one_tgt(b.cell_src(beta)) != b.one_src(b.cell_src(gamma)) {
                continue;
            }
            for alpha in b.cell_ids() {
                if b.one_tgt(b.cell_src(alpha)) != b.one_src(b.cell_src(beta)) {
                    continue;
                }
                let (h, g, f) = (b.cell_src(gamma), b.cell_src(beta), b.cell_src(alpha));
                let (h2, g2, f2) = (b.cell_tgt(gamma), b.cell_tgt(beta), b.cell_tgt(alpha));
                let sides = (|| -> Result<(CellId, CellId)> {
                    let lhs =
                        b.v(b.th(h2, g2, f2)?, b.h(gamma, b.h(beta, alpha)?)?)?;
                    let rhs = b.v(b.h(b.h(gamma, beta)?, alpha)?, b.th(h, g, f)?)?;
                    Ok((lhs, rhs))
                })();
                let (lhs, rhs) = match sides {
                    Ok(p) => p,
                    Err(_) => continue,
                };
                if lhs != rhs {
                    push(
                        "assoc-naturality",
                        format!(
                            "γ={} β={} α={}",
                            b.cell_name(gamma),
                            b.cell_name(beta),
                            b.cell_name(alpha)
                        ),
                    );
                }
            }
        }
    }
    // Naturality of unitors.
    for alpha in b.cell_ids() {
        let f = b.cell_src(alpha);
        let f2 = b.cell_tgt(alpha);
        let rid = b.id1(b.one_src(f));
        let run = (|| -> Result<bool> {
            let lhs = b.v(b.runit(f2), b.wr(alpha, rid)?)?;
            Ok(lhs == b.v(alpha, b.runit(f))?)
        })();
        if matches!(run, Ok(false)) {
            push("runitor-naturality", b.cell_name(alpha).to_string());
        }
        let lid = b.id1(b.one_tgt(f));
        let lun = (|| -> Result<bool> {
            let lhs = b.v(b.lunit(f2), b.wl(lid, alpha)?)?;
            Ok(lhs == b.v(alpha, b.lunit(f))?)
        })();
        if matches!(lun, Ok(false)) {
            push("lunitor-naturality", b.cell_name(alpha).to_string());
        }
    }
    // Strictness contract.
    if b.strict {
        for h in b.one_ids() {
            for g in b.one_ids() {
                if b.one_tgt(g) != b.one_src(h) {
                    continue;
                }
                for f in b.one_ids() {
                    if b.one_tgt(f) != b.one_src(g) {
                        continue;
                    }
                    if b.c1(h, b.c1(g, f).unwrap()).unwrap()
                        != b.c1(b.c1(h, g).unwrap(), f).unwrap()
                    {
                        push(
                            "strict-comp1-assoc",
                            format!("{},{},{}", b.one_name(h), b.one_name(g), b.one_name(f)),
                        );
                    }
                    if b.th(h, g, f).unwrap() != b.id2(b.c1(h, b.c1(g, f).unwrap()).unwrap()) {
                        push(
                            "strict-assoc-identity",
                            format!("{},{},{}", b.one_name(h), b.one_name(g), b.one_name(f)),
                        );
                    }
                }
            }
        }
        for f in b.one_ids() {
            if b.c1(f, b.id1(b.one_src(f))).unwrap() != f
                || b.c1(b.id1(b.one_tgt(f)), f).unwrap() != f
            {
                push("strict-comp1-unit", b.one_name(f).to_string());
            }
            if b.runit(f) != b.id2(f) || b.lunit(f) != b.id2(f) {
                push("strict-unitor-identity", b.one_name(f).to_string());
            }
        }
    }
    BicatReport { violations: out }
}

/// An adjoint equivalence `(e, d, Δ: id ⇒ d∘e, Ξ: e∘d ⇒ id)` satisfying the
/// two zig-zag equations.
#[derive(Copy, Clone, Debug)]
pub struct AdjointEquivalenceData {
    pub e: OneId,
    pub d: OneId,
    pub delta: CellId,
    pub xi: CellId,
}

/// Check the zig-zag equations for candidate adjoint-equivalence data.
fn zigzags_hold(b: &FinBicategory, e: OneId, d: OneId, delta: CellId, xi: CellId) -> bool {
    let run = || -> Result<bool> {
        // i_e = υ_e ⊙ (Ξ∗i_e) ⊙ θ_{e,d,e} ⊙ (i_e∗Δ) ⊙ π_e⁻¹
        let pinv = b
            .inverse(b.runit(e))
            .ok_or_else(|| Error::Structure("unitor".into()))?;
        let z1 = b.vchain(&[
            pinv,
            b.wl(e, delta)?,
            b.th(e, d, e)?,
            b.wr(xi, e)?,
            b.lunit(e),
        ])?;
        // i_d = π_d ⊙ (i_d∗Ξ) ⊙ θ⁻¹_{d,e,d} ⊙ (Δ∗i_d) ⊙ υ_d⁻¹
        let uinv = b
            .inverse(b.lunit(d))
            .ok_or_else(|| Error::Structure("unitor".into()))?;
        let z2 = b.vchain(&[
            uinv,
            b.wr(delta, d)?,
            b.th_inv(d, e, d)?,
            b.wl(d, xi)?,
            b.runit(d),
        ])?;
        Ok(z1 == b.id2(e) && z2 == b.id2(d))
    };
    run().unwrap_or(false)
}

/// Search for adjoint-equivalence data exhibiting `e` as an internal
/// equivalence; returns the lexicographically least `(d, Δ, Ξ)` or `None`.
pub fn find_internal_equivalence(b: &FinBicategory, e: OneId) -> Option<AdjointEquivalenceData> {
    let a = b.one_src(e);
    let bb = b.one_tgt(e);
    for d in b.hom1(bb, a) {
        let de = b.c1(d, e).ok()?;
        let ed = b.c1(e, d).ok()?;
        for delta in b.cells_between(b.id1(a), de) {
            if !b.is_invertible(delta) {
                continue;
            }
            for xi in b.cells_between(ed, b.id1(bb)) {
                if !b.is_invertible(xi) {
                    continue;
                }
                if zigzags_hold(b, e, d, delta, xi) {
                    return Some(AdjointEquivalenceData { e, d, delta, xi });
                }
            }
        }
    }
    None
}

/// A candidate weak-fiber-product square: cospan `g1: B1→A ⇐ B2→A :g2`,
/// legs `r1: C→B1`, `r2: C→B2`, and invertible `Ω: g1∘r1 ⇒ g2∘r2`.
#[derive(Copy, Clone, Debug)]
pub struct WfpSquare {
    pub g1: OneId,
    pub g2: OneId,
    pub r1: OneId,
    pub r2: OneId,
    pub omega: CellId,
}

impl WfpSquare {
    /// Apex object C of the square.
    pub fn apex(&self, b: &FinBicategory) -> ObjId {
        b.one_src(self.r1)
    }

    pub fn validate(&self, b: &FinBicategory) -> Result<()> {
        if b.one_tgt(self.g1) != b.one_tgt(self.g2) {
            return Err(Error::Precondition("cospan targets differ".into()));
        }
        if b.one_src(self.r1) != b.one_src(self.r2)
            || b.one_tgt(self.r1) != b.one_src(self.g1)
            || b.one_tgt(self.r2) != b.one_src(self.g2)
        {
            return Err(Error::Precondition("square endpoints incompatible".into()));
        }
        let lhs = b.c1(self.g1, self.r1)?;
        let rhs = b.c1(self.g2, self.r2)?;
        if b.cell_src(self.omega) != lhs || b.cell_tgt(self.omega) != rhs {
            return Err(Error::Precondition("Ω endpoints incompatible".into()));
        }
        if !b.is_invertible(self.omega) {
            return Err(Error::Precondition("Ω not invertible".into()));
        }
        Ok(())
    }
}

/// Does `(s, Λ1, Λ2)` witness condition B1 for the cone `(s1, s2, Λ)`?
/// The defining equation (associators type-forced, identities when strict):
/// `(Ω∗i_s) ⊙ θ_{g1,r1,s} ⊙ (i_{g1}∗Λ1) = θ_{g2,r2,s} ⊙ (i_{g2}∗Λ2) ⊙ Λ`.
fn b1_witness_ok(
    b: &FinBicategory,
    sq: &WfpSquare,
    lam: CellId,
    s: OneId,
    lam1: CellId,
    lam2: CellId,
) -> bool {
    let run = || -> Result<bool> {
        let lhs = b.vchain(&[
            b.wl(sq.g1, lam1)?,
            b.th(sq.g1, sq.r1, s)?,
            b.wr(sq.omega, s)?,
        ])?;
        let rhs = b.vchain(&[lam, b.wl(sq.g2, lam2)?, b.th(sq.g2, sq.r2, s)?])?;
        Ok(lhs == rhs)
    };
    run().unwrap_or(false)
}

/// Condition B1(D, s1, s2): every invertible `Λ: g1∘s1 ⇒ g2∘s2` admits
/// `(s: D→C, Λ1: s1 ⇒ r1∘s, Λ2: s2 ⇒ r2∘s)` with Λ1, Λ2 invertible
/// satisfying the comparison equation.
pub fn check_b1(b: &FinBicategory, sq: &WfpSquare, d: ObjId, s1: OneId, s2: OneId) -> Result<bool> {
    sq.validate(b)?;
    if b.one_src(s1) != d
        || b.one_src(s2) != d
        || b.one_tgt(s1) != b.one_src(sq.g1)
        || b.one_tgt(s2) != b.one_src(sq.g2)
    {
        return Err(Error::Precondition("B1 cone endpoints incompatible".into()));
    }
    let c = sq.apex(b);
    let g1s1 = b.c1(sq.g1, s1)?;
    let g2s2 = b.c1(sq.g2, s2)?;
    for lam in b.cells_between(g1s1, g2s2) {
        if !b.is_invertible(lam) {
            continue;
        }
        let mut found = false;
        'search: for s in b.hom1(d, c) {
            let r1s = b.c1(sq.r1, s)?;
            let r2s = b.c1(sq.r2, s)?;
            for lam1 in b.cells_between(s1, r1s) {
                if !b.is_invertible(lam1) {
                    continue;
                }
                for lam2 in b.cells_between(s2, r2s) {
                    if !b.is_invertible(lam2) {
                        continue;
                    }
                    if b1_witness_ok(b, sq, lam, s, lam1, lam2) {
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
    Ok(true)
}

/// The A2/B2 premise: do `(Γ1, Γ2)` commute with Ω?  The equation
/// (associators type-forced):
/// `θ⁻¹_{g2,r2,t'} ⊙ (Ω∗i_{t'}) ⊙ θ_{g1,r1,t'} ⊙ (i_{g1}∗Γ1)
///  = (i_{g2}∗Γ2) ⊙ θ⁻¹_{g2,r2,t} ⊙ (Ω∗i_t) ⊙ θ_{g1,r1,t}`.
fn b2_premise_ok(
    b: &FinBicategory,
    sq: &WfpSquare,
    t: OneId,
    tp: OneId,
    gam1: CellId,
    gam2: CellId,
) -> bool {
    let run = || -> Result<bool> {
        let lhs = b.vchain(&[
            b.wl(sq.g1, gam1)?,
            b.th(sq.g1, sq.r1, tp)?,
            b.wr(sq.omega, tp)?,
            b.th_inv(sq.g2, sq.r2, tp)?,
        ])?;
        let rhs = b.vchain(&[
            b.th(sq.g1, sq.r1, t)?,
            b.wr(sq.omega, t)?,
            b.th_inv(sq.g2, sq.r2, t)?,
            b.wl(sq.g2, gam2)?,
        ])?;
        Ok(lhs == rhs)
    };
    run().unwrap_or(false)
}

/// Condition B2(D, t, t′): for every pair of invertible `Γm: rm∘t ⇒ rm∘t′`
/// satisfying the premise, there is a *unique* invertible `Γ: t ⇒ t′` with
/// `i_{rm}∗Γ = Γm`; uniqueness is decided by counting.
pub fn check_b2(b: &FinBicategory, sq: &WfpSquare, d: ObjId, t: OneId, tp: OneId) -> Result<bool> {
    sq.validate(b)?;
    let c = sq.apex(b);
    if b.one_src(t) != d || b.one_src(tp) != d || b.one_tgt(t) != c || b.one_tgt(tp) != c {
        return Err(Error::Precondition("B2 cells endpoints incompatible".into()));
    }
    let r1t = b.c1(sq.r1, t)?;
    let r1tp = b.c1(sq.r1, tp)?;
    let r2t = b.c1(sq.r2, t)?;
    let r2tp = b.c1(sq.r2, tp)?;
    for gam1 in b.cells_between(r1t, r1tp) {
        if !b.is_invertible(gam1) {
            continue;
        }
        for gam2 in b.cells_between(r2t, r2tp) {
            if !b.is_invertible(gam2) {
                continue;
            }
            if !b2_premise_ok(b, sq, t, tp, gam1, gam2) {
                continue;
            }
            let count = b
                .cells_between(t, tp)
                .into_iter()
                .filter(|&gam| {
                    b.is_invertible(gam)
                        && b.wl(sq.r1, gam).ok() == Some(gam1)
                        && b.wl(sq.r2, gam).ok() == Some(gam2)
                })
                .count();
            if count != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Condition A1(D): B1 over all cones `(s1, s2)` out of `D`.
pub fn check_a1(b: &FinBicategory, sq: &WfpSquare, d: ObjId) -> Result<bool> {
    sq.validate(b)?;
    for s1 in b.hom1(d, b.one_src(sq.g1)) {
        for s2 in b.hom1(d, b.one_src(sq.g2)) {
            if !check_b1(b, sq, d, s1, s2)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Condition A2(D): B2 over all pairs `(t, t′)` of 1-cells `D → C`.
pub fn check_a2(b: &FinBicategory, sq: &WfpSquare, d: ObjId) -> Result<bool> {
    sq.validate(b)?;
    let c = sq.apex(b);
    for t in b.hom1(d, c) {
        for tp in b.hom1(d, c) {
            if !check_b2(b, sq, d, t, tp)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Is the square a weak fiber product?  A1 and A2 over every test object.
pub fn is_weak_fiber_product(b: &FinBicategory, sq: &WfpSquare) -> Result<bool> {
    sq.validate(b)?;
    for d in b.objects() {
        if !check_a1(b, sq, d)? || !check_a2(b, sq, d)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The square-rewriting moves whose effect on the WFP property is known.
#[derive(Clone, Debug)]
pub enum Transform {
    /// Replace the cospan feet through adjoint equivalences `em: B̄m → Bm`:
    /// new cospan `gm∘em`, new legs `dm∘rm`.
    PreEquiv {
        e1: AdjointEquivalenceData,
        e2: AdjointEquivalenceData,
    },
    /// Post-compose the cospan with an internal equivalence `e: A → Ā`.
    PostEquiv { e: OneId },
    /// Replace the cospan cells through invertible `Ωm: gm ⇒ ḡm`.
    Twist { om1: CellId, om2: CellId },
    /// Pre-compose the legs with an internal equivalence `e: C̄ → C`.
    ApexEquiv { e: OneId },
}

/// Rewrite a square along a [`Transform`], assembling the new Ω from the
/// printed composite (unitors/associators inserted in the type-forced
/// orientation; identity cells in a strict ambient).
pub fn transform_wfp_diagram(
    b: &FinBicategory,
    sq: &WfpSquare,
    t: &Transform,
) -> Result<WfpSquare> {
    sq.validate(b)?;
    match t {
        Transform::Twist { om1, om2 } => {
            if b.cell_src(*om1) != sq.g1 || b.cell_src(*om2) != sq.g2 {
                return Err(Error::Precondition("twist cells must start at the cospan".into()));
            }
            if !b.is_invertible(*om1) || !b.is_invertible(*om2) {
                return Err(Error::Precondition("twist cells must be invertible".into()));
            }
            let om1_inv = b.inverse(*om1).unwrap();
            // Ω̄ = (Ω2∗i_{r2}) ⊙ Ω ⊙ (Ω1⁻¹∗i_{r1})
            let omega = b.vchain(&[b.wr(om1_inv, sq.r1)?, sq.omega, b.wr(*om2, sq.r2)?])?;
            let out = WfpSquare {
                g1: b.cell_tgt(*om1),
                g2: b.cell_tgt(*om2),
                r1: sq.r1,
                r2: sq.r2,
                omega,
            };
            out.validate(b)?;
            Ok(out)
        }
        Transform::ApexEquiv { e } => {
            if b.one_tgt(*e) != sq.apex(b) {
                return Err(Error::Precondition("apex equivalence must land on C".into()));
            }
            if find_internal_equivalence(b, *e).is_none() {
                return Err(Error::Precondition(
                    "apex 1-cell is not an internal equivalence".into(),
                ));
            }
            // Ω̄ = θ⁻¹_{g2,r2,e} ⊙ (Ω∗i_e) ⊙ θ_{g1,r1,e}
            let omega = b.vchain(&[
                b.th(sq.g1, sq.r1, *e)?,
                b.wr(sq.omega, *e)?,
                b.th_inv(sq.g2, sq.r2, *e)?,
            ])?;
            let out = WfpSquare {
                g1: sq.g1,
                g2: sq.g2,
                r1: b.c1(sq.r1, *e)?,
                r2: b.c1(sq.r2, *e)?,
                omega,
            };
            out.validate(b)?;
            Ok(out)
        }
        Transform::PostEquiv { e } => {
            if b.one_src(*e) != b.one_tgt(sq.g1) {
                return Err(Error::Precondition("post equivalence must start at A".into()));
            }
            if find_internal_equivalence(b, *e).is_none() {
                return Err(Error::Precondition(
                    "post 1-cell is not an internal equivalence".into(),
                ));
            }
            // Ω̄ = θ_{e,g2,r2} ⊙ (i_e∗Ω) ⊙ θ⁻¹_{e,g1,r1}
            let omega = b.vchain(&[
                b.th_inv(*e, sq.g1, sq.r1)?,
                b.wl(*e, sq.omega)?,
                b.th(*e, sq.g2, sq.r2)?,
            ])?;
            let out = WfpSquare {
                g1: b.c1(*e, sq.g1)?,
                g2: b.c1(*e, sq.g2)?,
                r1: sq.r1,
                r2: sq.r2,
                omega,
            };
            out.validate(b)?;
            Ok(out)
        }
        Transform::PreEquiv { e1, e2 } => {
            for (m, eq) in [(1, e1), (2, e2)] {
                let gm = if m == 1 { sq.g1 } else { sq.g2 };
                if b.one_tgt(eq.e) != b.one_src(gm) {
                    return Err(Error::Precondition(format!(
                        "pre-equivalence {m} must land on the cospan source"
                    )));
                }
                if !b.is_invertible(eq.delta)
                    || !b.is_invertible(eq.xi)
                    || !zigzags_hold(b, eq.e, eq.d, eq.delta, eq.xi)
                {
                    return Err(Error::Precondition(format!(
                        "pre-equivalence {m} is not an adjoint equivalence"
                    )));
                }
            }
            // Ω̄ = θ⁻¹_{g2∘e2,d2,r2} ⊙ (θ_{g2,e2,d2}∗i_{r2}) ⊙ ((i_{g2}∗Ξ2⁻¹)∗i_{r2})
            //     ⊙ (π⁻¹_{g2}∗i_{r2}) ⊙ Ω ⊙ (π_{g1}∗i_{r1}) ⊙ ((i_{g1}∗Ξ1)∗i_{r1})
            //     ⊙ (θ⁻¹_{g1,e1,d1}∗i_{r1}) ⊙ θ_{g1∘e1,d1,r1}
            let g1e1 = b.c1(sq.g1, e1.e)?;
            let g2e2 = b.c1(sq.g2, e2.e)?;
            let xi2_inv = b
                .inverse(e2.xi)
                .ok_or_else(|| Error::Precondition("Ξ2 not invertible".into()))?;
            let p1 = b.runit(sq.g1);
            let p2_inv = b
                .inverse(b.runit(sq.g2))
                .ok_or_else(|| Error::Structure("unitor not invertible".into()))?;
            let omega = b.vchain(&[
                b.th(g1e1, e1.d, sq.r1)?,
                b.wr(b.th_inv(sq.g1, e1.e, e1.d)?, sq.r1)?,
                b.wr(b.wl(sq.g1, e1.xi)?, sq.r1)?,
                b.wr(p1, sq.r1)?,
                sq.omega,
                b.wr(p2_inv, sq.r2)?,
                b.wr(b.wl(sq.g2, xi2_inv)?, sq.r2)?,
                b.wr(b.th(sq.g2, e2.e, e2.d)?, sq.r2)?,
                b.th_inv(g2e2, e2.d, sq.r2)?,
            ])?;
            let out = WfpSquare {
                g1: g1e1,
                g2: g2e2,
                r1: b.c1(e1.d, sq.r1)?,
                r2: b.c1(e2.d, sq.r2)?,
                omega,
            };
            out.validate(b)?;
            Ok(out)
        }
    }
}

/// A strict 2-functor between finite bicategories, as index maps.
#[derive(Clone, Debug)]
pub struct TwoFunctor {
    pub obj_map: Vec<ObjId>,
    pub one_map: Vec<OneId>,
    pub cell_map: Vec<CellId>,
}

impl TwoFunctor {
    /// The identity 2-functor on `b`.
    pub fn identity(b: &FinBicategory) -> Self {
        TwoFunctor {
            obj_map: b.objects().collect(),
            one_map: b.one_ids().collect(),
            cell_map: b.cell_ids().collect(),
        }
    }

    /// Check strict preservation of all structure from `src` to `tgt`.
    pub fn check_strict(&self, src: &FinBicategory, tgt: &FinBicategory) -> Result<()> {
        if self.obj_map.len() != src.n_objects()
            || self.one_map.len() != src.n_ones()
            || self.cell_map.len() != src.n_cells()
        {
            return Err(Error::Structure("functor map size mismatch".into()));
        }
        let fo = |a: ObjId| self.obj_map[a.0 as usize];
        let f1 = |f: OneId| self.one_map[f.0 as usize];
        let f2 = |a: CellId| self.cell_map[a.0 as usize];
        for f in src.one_ids() {
            let i = f1(f);
            if tgt.one_src(i) != fo(src.one_src(f)) || tgt.one_tgt(i) != fo(src.one_tgt(f)) {
                return Err(Error::Precondition("functor breaks 1-cell endpoints".into()));
            }
        }
        for a in src.cell_ids() {
            let i = f2(a);
            if tgt.cell_src(i) != f1(src.cell_src(a)) || tgt.cell_tgt(i) != f1(src.cell_tgt(a)) {
                return Err(Error::Precondition("functor breaks 2-cell endpoints".into()));
            }
        }
        for a in src.objects() {
            if f1(src.id1(a)) != tgt.id1(fo(a)) {
                return Err(Error::Precondition("functor breaks identity 1-cells".into()));
            }
        }
        for f in src.one_ids() {
            if f2(src.id2(f)) != tgt.id2(f1(f)) {
                return Err(Error::Precondition("functor breaks identity 2-cells".into()));
            }
        }
        for g in src.one_ids() {
            for f in src.one_ids() {
                if src.one_tgt(f) != src.one_src(g) {
                    continue;
                }
                if f1(src.c1(g, f)?) != tgt.c1(f1(g), f1(f))? {
                    return Err(Error::Precondition("functor breaks 1-composition".into()));
                }
            }
        }
        for b2 in src.cell_ids() {
            for a in src.cell_ids() {
                if src.cell_tgt(a) == src.cell_src(b2)
                    && f2(src.v(b2, a)?) != tgt.v(f2(b2), f2(a))?
                {
                    return Err(Error::Precondition("functor breaks vertical composition".into()));
                }
                if src.one_tgt(src.cell_src(a)) == src.one_src(src.cell_src(b2))
                    && f2(src.h(b2, a)?) != tgt.h(f2(b2), f2(a))?
                {
                    return Err(Error::Precondition(
                        "functor breaks horizontal composition".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Weak-equivalence conditions: every target object is internally
    /// equivalent to an image (essential surjectivity), and every hom-functor
    /// is an equivalence of categories (essentially surjective on 1-cells up
    /// to invertible 2-cells, and bijective on 2-cells between images).
    pub fn check_weak_equivalence(&self, src: &FinBicategory, tgt: &FinBicategory) -> Result<()> {
        // (X1) essential surjectivity on objects.
        for bt in tgt.objects() {
            let hit = src.objects().any(|a| {
                let fa = self.obj_map[a.0 as usize];
                tgt.hom1(fa, bt)
                    .into_iter()
                    .any(|e| find_internal_equivalence(tgt, e).is_some())
            });
            if !hit {
                return Err(Error::Precondition(format!(
                    "no source object maps equivalently onto `{}`",
                    tgt.object_name(bt)
                )));
            }
        }
        // (X2) hom-functors are equivalences.
        for a in src.objects() {
            for ap in src.objects() {
                let fa = self.obj_map[a.0 as usize];
                let fap = self.obj_map[ap.0 as usize];
                // Essential surjectivity on 1-cells.
                for ft in tgt.hom1(fa, fap) {
                    let hit = src.hom1(a, ap).into_iter().any(|f| {
                        let img = self.one_map[f.0 as usize];
                        tgt.cells_between(img, ft)
                            .into_iter()
                            .any(|c| tgt.is_invertible(c))
                    });
                    if !hit {
                        return Err(Error::Precondition(format!(
                            "hom-functor ({}, {}) not essentially surjective",
                            src.object_name(a),
                            src.object_name(ap)
                        )));
                    }
                }
                // Full faithfulness on 2-cells.
                for f in src.hom1(a, ap) {
                    for g in src.hom1(a, ap) {
                        let dom = src.cells_between(f, g);
                        let img: Vec<CellId> =
                            dom.iter().map(|&c| self.cell_map[c.0 as usize]).collect();
                        let codom = tgt.cells_between(
                            self.one_map[f.0 as usize],
                            self.one_map[g.0 as usize],
                        );
                        let mut sorted = img.clone();
                        sorted.sort();
                        sorted.dedup();
                        if sorted.len() != dom.len() || sorted != codom {
                            return Err(Error::Precondition(format!(
                                "hom-functor ({}, {}) not fully faithful",
                                src.object_name(a),
                                src.object_name(ap)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Image of a square under this functor.
    pub fn map_square(&self, sq: &WfpSquare) -> WfpSquare {
        WfpSquare {
            g1: self.one_map[sq.g1.0 as usize],
            g2: self.one_map[sq.g2.0 as usize],
            r1: self.one_map[sq.r1.0 as usize],
            r2: self.one_map[sq.r2.0 as usize],
            omega: self.cell_map[sq.omega.0 as usize],
        }
    }
}

/// Transport along a strict 2-functor that is a weak equivalence: errors if
/// `f` is not structure-preserving or not a weak equivalence, otherwise
/// reports whether the image square is a weak fiber product.
pub fn check_strict_2functor_transport(
    f: &TwoFunctor,
    src: &FinBicategory,
    tgt: &FinBicategory,
    sq: &WfpSquare,
) -> Result<bool> {
    f.check_strict(src, tgt)?;
    f.check_weak_equivalence(src, tgt)?;
    sq.validate(src)?;
    is_weak_fiber_product(tgt, &f.map_square(sq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat;

    fn trivial_square(b: &FinBicategory, g1: &str, g2: &str, r1: &str, r2: &str) -> WfpSquare {
        let g1 = b.one_by_name(g1).unwrap();
        let g2 = b.one_by_name(g2).unwrap();
        let r1 = b.one_by_name(r1).unwrap();
        let r2 = b.one_by_name(r2).unwrap();
        let omega = b.id2(b.c1(g1, r1).unwrap());
        WfpSquare { g1, g2, r1, r2, omega }
    }

    #[test]
    fn trivial_promotions_validate() {
        for c in [
            fincat::arrow(),
            fincat::diamond(),
            fincat::double_diamond(),
            fincat::parallel(),
            fincat::z2grp(),
            fincat::fork(),
        ] {
            let b = FinBicategory::from_trivial(&c);
            let report = validate_bicategory(&b);
            assert!(report.ok(), "{}: {:?}", b.name, report.violations);
        }
    }

    #[test]
    fn corrupted_interchange_detected() {
        let c = fincat::z2grp();
        let mut b = FinBicategory::from_trivial(&c);
        // Rebind i_s ∗ i_s from i_id to i_s: breaks hcomp endpoint typing /
        // identity law.
        let s = b.one_by_name("s").unwrap();
        let is = b.id2(s);
        b.hcomp.insert((is, is), is);
        let report = validate_bicategory(&b);
        assert!(!report.ok());
        assert!(report
            .violations
            .iter()
            .any(|v| v.law == "hcomp-endpoints" || v.law == "hcomp-identities"));
    }

    #[test]
    fn identity_is_equivalence() {
        let b = FinBicategory::from_trivial(&fincat::diamond());
        let a = b.obj_by_name("a").unwrap();
        let e = b.id1(a);
        let data = find_internal_equivalence(&b, e).unwrap();
        assert_eq!(data.d, e);
    }

    #[test]
    fn thin_equivalence_is_isomorphism() {
        let b = FinBicategory::from_trivial(&fincat::diamond());
        let ca = b.one_by_name("ca").unwrap();
        assert!(find_internal_equivalence(&b, ca).is_none());
        let bext = FinBicategory::from_trivial(&fincat::diamond_ext());
        let j = bext.one_by_name("j").unwrap();
        assert!(find_internal_equivalence(&bext, j).is_some());
    }

    #[test]
    fn diamond_square_is_wfp() {
        let b = FinBicategory::from_trivial(&fincat::diamond());
        let sq = trivial_square(&b, "b1a", "b2a", "cb1", "cb2");
        assert!(is_weak_fiber_product(&b, &sq).unwrap());
    }

    #[test]
    fn double_diamond_square_fails_a1() {
        let b = FinBicategory::from_trivial(&fincat::double_diamond());
        let sq = trivial_square(&b, "b1a", "b2a", "c1b1", "c1b2");
        let c2 = b.obj_by_name("c2").unwrap();
        assert!(!check_a1(&b, &sq, c2).unwrap());
        assert!(!is_weak_fiber_product(&b, &sq).unwrap());
    }

    #[test]
    fn b1_b2_conjunction_equals_a1_a2() {
        let b = FinBicategory::from_trivial(&fincat::double_diamond());
        let sq = trivial_square(&b, "b1a", "b2a", "c1b1", "c1b2");
        for d in b.objects() {
            let a1 = check_a1(&b, &sq, d).unwrap();
            let all_b1 = b
                .hom1(d, b.one_src(sq.g1))
                .into_iter()
                .all(|s1| {
                    b.hom1(d, b.one_src(sq.g2))
                        .into_iter()
                        .all(|s2| check_b1(&b, &sq, d, s1, s2).unwrap())
                });
            assert_eq!(a1, all_b1);
            let a2 = check_a2(&b, &sq, d).unwrap();
            let c = sq.apex(&b);
            let all_b2 = b.hom1(d, c).into_iter().all(|t| {
                b.hom1(d, c)
                    .into_iter()
                    .all(|tp| check_b2(&b, &sq, d, t, tp).unwrap())
            });
            assert_eq!(a2, all_b2);
        }
    }

    #[test]
    fn twist_with_identities_is_noop() {
        let b = FinBicategory::from_trivial(&fincat::diamond());
        let sq = trivial_square(&b, "b1a", "b2a", "cb1", "cb2");
        let t = Transform::Twist {
            om1: b.id2(sq.g1),
            om2: b.id2(sq.g2),
        };
        let out = transform_wfp_diagram(&b, &sq, &t).unwrap();
        assert_eq!(out.g1, sq.g1);
        assert_eq!(out.omega, sq.omega);
    }

    #[test]
    fn apex_equiv_identity_is_noop_in_strict() {
        let b = FinBicategory::from_trivial(&fincat::diamond());
        let sq = trivial_square(&b, "b1a", "b2a", "cb1", "cb2");
        let e = b.id1(sq.apex(&b));
        let out = transform_wfp_diagram(&b, &sq, &Transform::ApexEquiv { e }).unwrap();
        assert_eq!(out.r1, sq.r1);
        assert_eq!(out.omega, sq.omega);
    }

    #[test]
    fn post_equiv_preserves_wfp_on_diamond_ext() {
        let b = FinBicategory::from_trivial(&fincat::diamond_ext());
        let sq = trivial_square(&b, "b1a", "b2a", "cb1", "cb2");
        assert!(is_weak_fiber_product(&b, &sq).unwrap());
        let j = b.one_by_name("j").unwrap();
        let out = transform_wfp_diagram(&b, &sq, &Transform::PostEquiv { e: j }).unwrap();
        assert!(is_weak_fiber_product(&b, &out).unwrap());
    }

    #[test]
    fn transport_identity_functor() {
        let b = FinBicategory::from_trivial(&fincat::diamond());
        let sq = trivial_square(&b, "b1a", "b2a", "cb1", "cb2");
        let f = TwoFunctor::identity(&b);
        assert!(check_strict_2functor_transport(&f, &b, &b, &sq).unwrap());
    }

    #[test]
    fn transport_rejects_non_equivalence() {
        // Collapse DOUBLE-DIAMOND's c2 onto c1: not fully faithful on homs.
        let src = FinBicategory::from_trivial(&fincat::double_diamond());
        let f = {
            let mut obj_map: Vec<ObjId> = src.objects().collect();
            obj_map[src.obj_by_name("c2").unwrap().0 as usize] = src.obj_by_name("c1").unwrap();
            let mut one_map: Vec<OneId> = src.one_ids().collect();
            let redirect = [
                ("id_c2", "id_c1"),
                ("c2b1", "c1b1"),
                ("c2b2", "c1b2"),
                ("c2a", "c1a"),
            ];
            for (from, to) in redirect {
                one_map[src.one_by_name(from).unwrap().0 as usize] =
                    src.one_by_name(to).unwrap();
            }
            let cell_map: Vec<CellId> =
                one_map.iter().map(|&f1| src.id2(f1)).collect();
            TwoFunctor {
                obj_map,
                one_map,
                cell_map,
            }
        };
        let sq = trivial_square(&src, "b1a", "b2a", "c1b1", "c1b2");
        match check_strict_2functor_transport(&f, &src, &src, &sq) {
            Err(Error::Precondition(_)) => {}
            other => panic!("expected precondition error, got {other:?}"),
        }
    }
}
