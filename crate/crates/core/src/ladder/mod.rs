//! A figure sequence described as rungs on a ladder of abstraction, plus the
//! consistency rules every sequence must satisfy.
//!
//! Four rules are checked by [`validate_ladder`]:
//!
//! * **Shared space**: panels with the same axis variables (name and unit)
//!   must agree on both ranges and on the aspect ratio.
//! * **Color continuity**: a role reused by a stage must have been introduced
//!   by one of that stage's ancestors, so the color links back along the chain
//!   the reader followed.
//! * **Role rank**: the lowest-ranked role newly introduced at each stage never
//!   decreases along the ladder. Colors climb with the abstraction.
//! * **Parent order**: a stage's parent comes before it.

pub mod basketball;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use basketball::{build_basketball_ladder, LadderInputs};

/// Absolute tolerance when comparing ranges and aspect ratios of shared spaces.
pub const RANGE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LadderError {
    #[error("ladder must contain at least one stage")]
    Empty,
    #[error("stage ids must run 1, 2, 3, ...: position {position} holds id {id}")]
    NonConsecutiveIds { position: usize, id: u32 },
    #[error("stage {stage}: parent {parent} does not exist")]
    UnresolvedParent { stage: u32, parent: u32 },
    #[error("stage {0}: at least one panel is required")]
    NoPanels(u32),
    #[error("stage {0}: caption must not be empty")]
    EmptyCaption(u32),
    #[error("stage {stage}: invalid plot space: {reason}")]
    InvalidSpace { stage: u32, reason: String },
}

/// Axis variable identity. Two axes are the same variable only when both
/// name and unit match.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub unit: String,
}

impl Variable {
    pub fn new(name: impl Into<String>, unit: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            unit: unit.into(),
        }
    }

    /// Axis label text, e.g. `angle (degrees)`.
    pub fn label(&self) -> String {
        if self.unit.is_empty() {
            self.name.clone()
        } else {
            format!("{} ({})", self.name, self.unit)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
}

impl Range {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn span(&self) -> f64 {
        self.hi - self.lo
    }

    fn approx_eq(&self, other: &Range) -> bool {
        (self.lo - other.lo).abs() <= RANGE_TOLERANCE
            && (self.hi - other.hi).abs() <= RANGE_TOLERANCE
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotSpace {
    pub x_var: Variable,
    pub y_var: Variable,
    pub x_range: Range,
    pub y_range: Range,
    /// y-units per pixel divided by x-units per pixel.
    pub aspect: f64,
}

impl PlotSpace {
    pub fn identity(&self) -> (&Variable, &Variable) {
        (&self.x_var, &self.y_var)
    }

    pub fn check(&self) -> Result<(), String> {
        for (axis, r) in [("x_range", self.x_range), ("y_range", self.y_range)] {
            if !(r.lo.is_finite() && r.hi.is_finite() && r.lo < r.hi) {
                return Err(format!("{axis} needs lo < hi, got [{}, {}]", r.lo, r.hi));
            }
        }
        if !(self.aspect.is_finite() && self.aspect > 0.0) {
            return Err(format!("aspect must be > 0, got {}", self.aspect));
        }
        Ok(())
    }

    fn same_geometry(&self, other: &PlotSpace) -> bool {
        self.x_range.approx_eq(&other.x_range)
            && self.y_range.approx_eq(&other.y_range)
            && (self.aspect - other.aspect).abs() <= RANGE_TOLERANCE
    }
}

/// Semantic color assignment. Declaration order is rank order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColorRole {
    /// Court, axes and reference lines (black).
    Baseline,
    /// Directly drawn trajectories (red).
    Concrete,
    /// The hoop-reaching solution (blue).
    Solution,
    /// The softest-shot optimum (green).
    Optimum,
}

impl ColorRole {
    pub const ALL: [ColorRole; 4] = [
        ColorRole::Baseline,
        ColorRole::Concrete,
        ColorRole::Solution,
        ColorRole::Optimum,
    ];

    pub fn rank(self) -> u8 {
        self as u8
    }

    pub fn hex(self) -> &'static str {
        match self {
            ColorRole::Baseline => "#000000",
            ColorRole::Concrete => "#CC0000",
            ColorRole::Solution => "#0000CC",
            ColorRole::Optimum => "#00AA00",
        }
    }
}

/// The seven abstraction moves a stage can make.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyTag {
    DefineAbstractSpace,
    ModeledOrOptimizedValues,
    StatisticalAverages,
    ExpandYears,
    ExpandSampling,
    DefineSubgroups,
    UnfixParameter,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stage {
    pub id: u32,
    pub panels: Vec<PlotSpace>,
    pub roles_used: BTreeSet<ColorRole>,
    pub tags: BTreeSet<StrategyTag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent: Option<u32>,
    pub caption: String,
}

/// Ordered stages. Construction checks ids, parent references, panels,
/// captions and plot-space geometry; the rule checks live in [`validate_ladder`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LadderDocument", into = "LadderDocument")]
pub struct LadderSpec {
    stages: Vec<Stage>,
}

#[derive(Serialize, Deserialize)]
struct LadderDocument {
    stages: Vec<Stage>,
}

impl TryFrom<LadderDocument> for LadderSpec {
    type Error = LadderError;

    fn try_from(doc: LadderDocument) -> Result<Self, Self::Error> {
        LadderSpec::new(doc.stages)
    }
}

impl From<LadderSpec> for LadderDocument {
    fn from(spec: LadderSpec) -> Self {
        LadderDocument {
            stages: spec.stages,
        }
    }
}

impl LadderSpec {
    pub fn new(stages: Vec<Stage>) -> Result<Self, LadderError> {
        if stages.is_empty() {
            return Err(LadderError::Empty);
        }
        for (i, stage) in stages.iter().enumerate() {
            if stage.id as usize != i + 1 {
                return Err(LadderError::NonConsecutiveIds {
                    position: i,
                    id: stage.id,
                });
            }
        }
        let count = stages.len() as u32;
        for stage in &stages {
            if let Some(parent) = stage.parent {
                if parent == 0 || parent > count {
                    return Err(LadderError::UnresolvedParent {
                        stage: stage.id,
                        parent,
                    });
                }
            }
            if stage.panels.is_empty() {
                return Err(LadderError::NoPanels(stage.id));
            }
            if stage.caption.trim().is_empty() {
                return Err(LadderError::EmptyCaption(stage.id));
            }
            for panel in &stage.panels {
                panel.check().map_err(|reason| LadderError::InvalidSpace {
                    stage: stage.id,
                    reason,
                })?;
            }
        }
        Ok(Self { stages })
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn stage(&self, id: u32) -> Option<&Stage> {
        self.stages.get((id as usize).checked_sub(1)?)
    }

    pub fn into_stages(self) -> Vec<Stage> {
        self.stages
    }

    pub fn panel_count(&self) -> usize {
        self.stages.iter().map(|s| s.panels.len()).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ladder spec serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Ancestor ids from nearest to farthest, or `None` when the chain
    /// contains a parent that does not precede its child.
    fn ancestors(&self, id: u32) -> Option<Vec<u32>> {
        let mut chain = Vec::new();
        let mut current = id;
        while let Some(parent) = self.stage(current)?.parent {
            if parent >= current {
                return None;
            }
            chain.push(parent);
            current = parent;
        }
        Some(chain)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ViolationKind {
    SharedSpaceMismatch,
    ColorContinuityBreak,
    RoleRankRegression,
    BrokenParentOrder,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub stages: Vec<u32>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.stages.iter().map(u32::to_string).collect();
        write!(
            f,
            "{} [stages {}]: {}",
            self.kind,
            ids.join(","),
            self.message
        )
    }
}

fn fmt_space(space: &PlotSpace) -> String {
    format!(
        "x [{}, {}], y [{}, {}], aspect {}",
        space.x_range.lo, space.x_range.hi, space.y_range.lo, space.y_range.hi, space.aspect
    )
}

/// Checks every rule and returns all violations, grouped by rule in the
/// order shared space, color continuity, role rank, parent order.
/// An empty list means the ladder is consistent.
pub fn validate_ladder(spec: &LadderSpec) -> Vec<Violation> {
    let mut out = Vec::new();
    check_shared_spaces(spec, &mut out);
    check_color_continuity(spec, &mut out);
    check_role_ranks(spec, &mut out);
    check_parent_order(spec, &mut out);
    out
}

type SpaceGroup<'a> = ((&'a Variable, &'a Variable), Vec<(u32, &'a PlotSpace)>);

// One violation per space identity whose panels disagree, measured against
// the first panel that used the space.
fn check_shared_spaces(spec: &LadderSpec, out: &mut Vec<Violation>) {
    let mut groups: Vec<SpaceGroup> = Vec::new();
    for stage in spec.stages() {
        for panel in &stage.panels {
            let key = panel.identity();
            match groups.iter_mut().find(|(k, _)| *k == key) {
                Some((_, members)) => members.push((stage.id, panel)),
                None => groups.push((key, vec![(stage.id, panel)])),
            }
        }
    }
    for ((x, y), members) in groups {
        let (first_id, reference) = members[0];
        let offenders: BTreeSet<u32> = members
            .iter()
            .filter(|(_, p)| !p.same_geometry(reference))
            .map(|(id, _)| *id)
            .collect();
        if offenders.is_empty() {
            continue;
        }
        let mut stages: BTreeSet<u32> = offenders.clone();
        stages.insert(first_id);
        let first_bad = members
            .iter()
            .find(|(_, p)| !p.same_geometry(reference))
            .map(|(_, p)| *p)
            .expect("offender exists");
        out.push(Violation {
            kind: ViolationKind::SharedSpaceMismatch,
            stages: stages.into_iter().collect(),
            message: format!(
                "space `{}` vs `{}` first drawn in stage {} as {}; stage(s) {:?} use {}",
                x.label(),
                y.label(),
                first_id,
                fmt_space(reference),
                offenders,
                fmt_space(first_bad)
            ),
        });
    }
}

fn first_introductions(spec: &LadderSpec) -> BTreeMap<ColorRole, u32> {
    let mut intro = BTreeMap::new();
    for stage in spec.stages() {
        for &role in &stage.roles_used {
            intro.entry(role).or_insert(stage.id);
        }
    }
    intro
}

fn check_color_continuity(spec: &LadderSpec, out: &mut Vec<Violation>) {
    let intro = first_introductions(spec);
    for stage in spec.stages() {
        // Stages with a broken chain are reported by the parent-order rule.
        let Some(ancestors) = spec.ancestors(stage.id) else {
            continue;
        };
        for &role in &stage.roles_used {
            let introduced = intro[&role];
            if introduced == stage.id || ancestors.contains(&introduced) {
                continue;
            }
            out.push(Violation {
                kind: ViolationKind::ColorContinuityBreak,
                stages: vec![introduced, stage.id],
                message: format!(
                    "stage {} reuses {:?} ({}) introduced in stage {}, which is not among its ancestors {:?}",
                    stage.id,
                    role,
                    role.hex(),
                    introduced,
                    ancestors
                ),
            });
        }
    }
}

fn check_role_ranks(spec: &LadderSpec, out: &mut Vec<Violation>) {
    let mut seen = BTreeSet::new();
    let mut last: Option<(u32, ColorRole)> = None;
    for stage in spec.stages() {
        let newest = stage
            .roles_used
            .iter()
            .copied()
            .filter(|r| !seen.contains(r))
            .min();
        seen.extend(stage.roles_used.iter().copied());
        let Some(role) = newest else { continue };
        if let Some((prev_id, prev_role)) = last {
            if role.rank() < prev_role.rank() {
                out.push(Violation {
                    kind: ViolationKind::RoleRankRegression,
                    stages: vec![prev_id, stage.id],
                    message: format!(
                        "stage {} introduces {:?} (rank {}) after stage {} introduced {:?} (rank {})",
                        stage.id,
                        role,
                        role.rank(),
                        prev_id,
                        prev_role,
                        prev_role.rank()
                    ),
                });
            }
        }
        last = Some((stage.id, role));
    }
}

fn check_parent_order(spec: &LadderSpec, out: &mut Vec<Violation>) {
    for stage in spec.stages() {
        if let Some(parent) = stage.parent {
            if parent >= stage.id {
                out.push(Violation {
                    kind: ViolationKind::BrokenParentOrder,
                    stages: vec![stage.id, parent],
                    message: format!(
                        "stage {} names parent {}, which does not come before it",
                        stage.id, parent
                    ),
                });
            }
        }
    }
}
