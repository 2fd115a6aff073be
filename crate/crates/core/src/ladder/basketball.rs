//! The five-rung basketball ladder: court, trajectories, the hoop-reaching
//! shot, required speed against angle, and the optimum against distance.

use std::collections::BTreeSet;

use thiserror::Error;

use super::{ColorRole, LadderError, LadderSpec, PlotSpace, Range, Stage, StrategyTag, Variable};
use crate::kinematics::{
    sample_trajectory, KinematicsError, LaunchState, ShotParams, Trajectory, DEFAULT_SAMPLES,
};
use crate::render::{self, Anchor, Dash, Layout, Mark, Panel, Scene, Style};
use crate::solver::{self, OptimumCurve, SolveError};

/// Stage shown by each scene, in scene order.
pub const SCENE_STAGES: [u32; 7] = [1, 2, 3, 4, 4, 5, 5];

/// Plot-height to plot-width ratio used for the abstract spaces.
const ABSTRACT_SHAPE: f64 = 0.75;
/// Angle grid for the required-speed curve, in degrees.
const CURVE_ANGLE_MAX_DEG: f64 = 89.0;
const CURVE_POINTS: usize = 891;

const COURT: Style = Style::solid(ColorRole::Baseline, 1.5);
const SHOOTER: Style = Style::solid(ColorRole::Baseline, 3.0);
const TRAJECTORY: Style = Style::solid(ColorRole::Concrete, 2.0);
const CONTEXT: Style = Style::solid(ColorRole::Concrete, 1.0);
const SOLUTION: Style = Style::solid(ColorRole::Solution, 2.5);
const FEASIBILITY: Style = Style::solid(ColorRole::Baseline, 1.0).with_dash(Dash::Dashed);
const OPTIMUM_LINE: Style = Style::solid(ColorRole::Optimum, 1.5).with_dash(Dash::Dotted);
const OPTIMUM_CURVE: Style = Style::solid(ColorRole::Optimum, 2.0);
const OPTIMUM_CONTEXT: Style = Style::solid(ColorRole::Optimum, 1.0);

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("ladder input `{field}`: {reason}")]
    Input { field: &'static str, reason: String },
    #[error(transparent)]
    Kinematics(#[from] KinematicsError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Ladder(#[from] LadderError),
}

/// Everything the basketball ladder is built from.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderInputs {
    pub params: ShotParams,
    /// Launch angle of the concrete shots, radians.
    pub launch_angle: f64,
    /// Speed of the single shot drawn on its own.
    pub featured_speed: f64,
    pub velocities: Vec<f64>,
    pub altitudes: Vec<f64>,
    pub distances: Vec<f64>,
    pub samples: usize,
}

impl Default for LadderInputs {
    fn default() -> Self {
        Self {
            params: ShotParams::default(),
            launch_angle: 30f64.to_radians(),
            featured_speed: 15.0,
            velocities: vec![5.0, 10.0, 15.0, 20.0],
            altitudes: vec![1.2, 1.7, 2.2],
            distances: solver::distance_grid(1.0, 15.0, 0.1),
            samples: DEFAULT_SAMPLES,
        }
    }
}

fn short(v: f64) -> String {
    format!("{v}")
}

fn polyline(traj: &Trajectory, style: Style) -> Mark {
    Mark::Polyline {
        points: traj.samples.iter().map(|s| (s.x, s.y)).collect(),
        style,
    }
}

/// Label at the end of a path; paths stopped by the hoop plane get it on their left.
fn end_label(traj: &Trajectory, text: String, style: Style) -> Mark {
    let last = traj.last();
    let at_plane = last.x >= 0.6 * traj.params.distance;
    let (offset, anchor) = if at_plane {
        ((-4.0, -6.0), Anchor::End)
    } else {
        ((4.0, -4.0), Anchor::Start)
    };
    Mark::Text {
        x: last.x,
        y: last.y,
        text,
        offset,
        anchor,
        style,
    }
}

fn court(params: &ShotParams, x_range: Range, labelled: bool) -> Vec<Mark> {
    let ShotParams {
        release_altitude: a,
        distance: d,
        hoop_height: h,
        ..
    } = *params;
    let pole = d + 0.5;
    let mut marks = vec![
        Mark::Polyline {
            points: vec![(x_range.lo, 0.0), (x_range.hi, 0.0)],
            style: COURT,
        },
        Mark::Polyline {
            points: vec![(0.0, 0.0), (0.0, a)],
            style: SHOOTER,
        },
        Mark::Point {
            x: 0.0,
            y: a,
            radius: 4.0,
            style: COURT,
        },
        Mark::Polyline {
            points: vec![(pole, 0.0), (pole, h + 0.6)],
            style: SHOOTER,
        },
        Mark::Polyline {
            points: vec![(d - 0.23, h), (pole, h)],
            style: COURT,
        },
    ];
    if labelled {
        let text = |x, y, text: String, offset, anchor| Mark::Text {
            x,
            y,
            text,
            offset,
            anchor,
            style: COURT,
        };
        marks.push(text(
            0.0,
            a,
            format!("a = {} m", short(a)),
            (8.0, 0.0),
            Anchor::Start,
        ));
        marks.push(text(
            d,
            h,
            format!("h = {} m", short(h)),
            (-8.0, -8.0),
            Anchor::End,
        ));
        marks.push(text(
            0.5 * d,
            0.0,
            format!("d = {} m", short(d)),
            (0.0, -8.0),
            Anchor::Middle,
        ));
    }
    marks
}

fn physical_space(inputs: &LadderInputs, trajectories: &[&Trajectory]) -> PlotSpace {
    let p = &inputs.params;
    let top = trajectories
        .iter()
        .flat_map(|t| t.samples.iter().map(|s| s.y))
        .fold(p.hoop_height.max(p.release_altitude) + 0.6, f64::max);
    PlotSpace {
        x_var: Variable::new("horizontal distance", "m"),
        y_var: Variable::new("height", "m"),
        x_range: Range::new(-1.0, p.distance + 1.0),
        y_range: Range::new(0.0, (top + 0.5).ceil()),
        aspect: 1.0,
    }
}

fn abstract_space(x_var: Variable, y_var: Variable, x_range: Range, y_range: Range) -> PlotSpace {
    let aspect = y_range.span() / (ABSTRACT_SHAPE * x_range.span());
    PlotSpace {
        x_var,
        y_var,
        x_range,
        y_range,
        aspect,
    }
}

fn stacked_space(x_var: Variable, y_var: Variable, x_range: Range, y_range: Range) -> PlotSpace {
    let (w, h) = render::available_plot_size(
        Layout::StackedSharedX,
        2,
        render::DEFAULT_WIDTH,
        render::DEFAULT_HEIGHT,
    );
    PlotSpace {
        aspect: render::filling_aspect(x_range.span(), y_range.span(), w, h),
        x_var,
        y_var,
        x_range,
        y_range,
    }
}

fn padded(lo: f64, hi: f64, pad: f64, step: f64) -> Range {
    Range::new(
        ((lo - pad) / step).floor() * step,
        ((hi + pad) / step).ceil() * step,
    )
}

fn check_inputs(inputs: &LadderInputs) -> Result<(), BuildError> {
    let bad = |field, reason: String| Err(BuildError::Input { field, reason });
    inputs.params.validate()?;
    LaunchState::new(inputs.launch_angle, inputs.featured_speed)?;
    if inputs.velocities.is_empty() {
        return bad("velocities", "at least one speed is required".into());
    }
    if let Some(v) = inputs
        .velocities
        .iter()
        .find(|v| !(v.is_finite() && **v > 0.0))
    {
        return bad("velocities", format!("speeds must be > 0 m/s, got {v}"));
    }
    if inputs.altitudes.is_empty() {
        return bad("altitudes", "at least one altitude is required".into());
    }
    if let Some(a) = inputs
        .altitudes
        .iter()
        .find(|a| !(a.is_finite() && **a >= 0.0))
    {
        return bad("altitudes", format!("altitudes must be >= 0 m, got {a}"));
    }
    if inputs.distances.len() < 2 {
        return bad("d_grid", "at least two distances are required".into());
    }
    if inputs.samples < 2 {
        return bad(
            "samples",
            format!("need at least 2, got {}", inputs.samples),
        );
    }
    Ok(())
}

fn stage(
    id: u32,
    panels: Vec<PlotSpace>,
    roles: &[ColorRole],
    tags: &[StrategyTag],
    caption: String,
) -> Stage {
    Stage {
        id,
        panels,
        roles_used: roles.iter().copied().collect(),
        tags: tags.iter().copied().collect::<BTreeSet<_>>(),
        parent: (id > 1).then(|| id - 1),
        caption,
    }
}

/// Angle and speed polylines for one sweep.
fn curve_marks(curve: &OptimumCurve, style: Style) -> (Mark, Mark) {
    let angle = curve
        .entries
        .iter()
        .map(|e| (e.distance, e.optimum.angle.to_degrees()))
        .collect();
    let speed = curve
        .entries
        .iter()
        .map(|e| (e.distance, e.optimum.speed))
        .collect();
    (
        Mark::Polyline {
            points: angle,
            style,
        },
        Mark::Polyline {
            points: speed,
            style,
        },
    )
}

/// Legend row in the upper right of a panel, where the falling angle curves leave room.
fn legend_entry(space: &PlotSpace, row: usize, text: String, style: Style) -> [Mark; 2] {
    let (x, y) = (space.x_range, space.y_range);
    let at_y = y.hi - (0.1 + 0.12 * row as f64) * y.span();
    [
        Mark::Polyline {
            points: vec![
                (x.lo + 0.68 * x.span(), at_y),
                (x.lo + 0.76 * x.span(), at_y),
            ],
            style,
        },
        Mark::Text {
            x: x.lo + 0.78 * x.span(),
            y: at_y,
            text,
            offset: (0.0, 4.0),
            anchor: Anchor::Start,
            style,
        },
    ]
}

/// Builds the ladder description and the seven scenes that draw it.
/// Scene `i` belongs to stage [`SCENE_STAGES`]`[i]`.
pub fn build_basketball_ladder(
    inputs: &LadderInputs,
) -> Result<(LadderSpec, Vec<Scene>), BuildError> {
    check_inputs(inputs)?;
    let params = &inputs.params;
    let angle = inputs.launch_angle;
    let angle_deg = angle.to_degrees();

    // Physical space: trajectories at a fixed angle.
    let launch = |v| LaunchState::new(angle, v);
    let featured = sample_trajectory(params, &launch(inputs.featured_speed)?, inputs.samples)?;
    let family = inputs
        .velocities
        .iter()
        .map(|&v| sample_trajectory(params, &launch(v)?, inputs.samples))
        .collect::<Result<Vec<_>, _>>()?;
    let v_hoop = solver::required_velocity(params, angle)?;
    let solution = sample_trajectory(params, &launch(v_hoop)?, inputs.samples)?;

    let mut all: Vec<&Trajectory> = family.iter().collect();
    all.push(&featured);
    all.push(&solution);
    let physical = physical_space(inputs, &all);
    let x_range = physical.x_range;

    let mut fig1 = Panel::new(physical.clone(), "The shot");
    fig1.marks = court(params, x_range, true);

    let mut single = Panel::new(
        physical.clone(),
        format!("One shot at {} m/s", short(inputs.featured_speed)),
    );
    single.marks = court(params, x_range, false);
    single.marks.push(polyline(&featured, TRAJECTORY));
    single.marks.push(end_label(
        &featured,
        format!("v = {} m/s", short(inputs.featured_speed)),
        TRAJECTORY,
    ));

    let mut several = Panel::new(physical.clone(), "Several launch speeds");
    several.marks = court(params, x_range, false);
    for (traj, v) in family.iter().zip(&inputs.velocities) {
        several.marks.push(polyline(traj, TRAJECTORY));
        several.marks.push(end_label(
            traj,
            format!("v = {} m/s", short(*v)),
            TRAJECTORY,
        ));
    }

    let mut fig3 = Panel::new(physical.clone(), "The shot that reaches the hoop");
    fig3.marks = court(params, x_range, false);
    for traj in &family {
        fig3.marks.push(polyline(traj, CONTEXT));
    }
    fig3.marks.push(polyline(&solution, SOLUTION));
    fig3.marks.push(end_label(
        &solution,
        format!("v = {v_hoop:.1} m/s"),
        SOLUTION,
    ));

    // Abstract space: required speed against launch angle.
    let curve = solver::angle_curve(params, 0.0, CURVE_ANGLE_MAX_DEG.to_radians(), CURVE_POINTS)?;
    let optimum = solver::optimal_angle(params)?;
    let feasibility_deg = solver::feasibility_angle(params).to_degrees();
    let velocity_space = abstract_space(
        Variable::new("launch angle", "degrees"),
        Variable::new("required speed", "m/s"),
        Range::new(0.0, 90.0),
        Range::new(0.0, 5.0 * (2.0 * optimum.speed.max(v_hoop) / 5.0).ceil()),
    );
    let speed_curve = |panel: &mut Panel| {
        panel.marks.push(Mark::VLine {
            x: feasibility_deg,
            style: FEASIBILITY,
        });
        for run in curve.feasible_runs() {
            if run.len() >= 2 {
                panel.marks.push(Mark::Polyline {
                    points: run.iter().map(|&(a, v)| (a.to_degrees(), v)).collect(),
                    style: SOLUTION,
                });
            }
        }
    };
    let mut fig4 = Panel::new(velocity_space.clone(), "Speed needed to reach the hoop");
    speed_curve(&mut fig4);
    fig4.marks.push(Mark::Point {
        x: angle_deg,
        y: v_hoop,
        radius: 4.0,
        style: SOLUTION,
    });
    fig4.marks.push(Mark::Text {
        x: angle_deg,
        y: v_hoop,
        text: format!("{angle_deg:.0}\u{b0}, {v_hoop:.1} m/s"),
        offset: (8.0, -8.0),
        anchor: Anchor::Start,
        style: SOLUTION,
    });
    let opt_deg = optimum.angle.to_degrees();
    let mut fig5 = Panel::new(velocity_space.clone(), "The softest shot");
    speed_curve(&mut fig5);
    fig5.marks.push(Mark::VLine {
        x: opt_deg,
        style: OPTIMUM_LINE,
    });
    fig5.marks.push(Mark::Point {
        x: opt_deg,
        y: optimum.speed,
        radius: 4.0,
        style: OPTIMUM_CURVE,
    });
    fig5.marks.push(Mark::Text {
        x: opt_deg,
        y: optimum.speed,
        text: format!("optimum: {opt_deg:.1}\u{b0}, {:.1} m/s", optimum.speed),
        offset: (6.0, 20.0),
        anchor: Anchor::Start,
        style: OPTIMUM_CURVE,
    });

    // Optimum against distance, one curve per release altitude.
    let h = params.hoop_height;
    let g = params.gravity;
    let base = solver::sweep_distance(params.release_altitude, h, g, &inputs.distances)?;
    let others = solver::sweep_altitudes(&inputs.altitudes, h, g, &inputs.distances)?;
    let every = || {
        std::iter::once(&base)
            .chain(others.iter())
            .flat_map(|c| c.entries.iter())
    };
    let (ang_lo, ang_hi) = every().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), e| {
        let d = e.optimum.angle.to_degrees();
        (lo.min(d), hi.max(d))
    });
    let v_hi = every().fold(0.0f64, |m, e| m.max(e.optimum.speed));
    let d_range = Range::new(
        inputs.distances[0].floor(),
        inputs.distances[inputs.distances.len() - 1].ceil(),
    );
    let distance_var = Variable::new("distance to hoop", "m");
    let angle_space = stacked_space(
        distance_var.clone(),
        Variable::new("optimal angle", "degrees"),
        d_range,
        padded(ang_lo, ang_hi, 1.0, 5.0),
    );
    let speed_space = stacked_space(
        distance_var,
        Variable::new("speed at optimum", "m/s"),
        d_range,
        Range::new(0.0, 2.0 * ((v_hi + 0.5) / 2.0).ceil()),
    );

    let (base_angle, base_speed) = curve_marks(&base, OPTIMUM_CURVE);
    let mut fig6_angle = Panel::new(angle_space.clone(), "Softest-shot angle");
    let mut fig6_speed = Panel::new(speed_space.clone(), "Speed of the softest shot");
    fig6_angle.marks.push(base_angle);
    fig6_angle.marks.extend(legend_entry(
        &angle_space,
        0,
        format!("a = {} m", short(base.release_altitude)),
        OPTIMUM_CURVE,
    ));
    fig6_speed.marks.push(base_speed);
    if d_range.lo <= params.distance && params.distance <= d_range.hi {
        let dot = |y| Mark::Point {
            x: params.distance,
            y,
            radius: 4.0,
            style: OPTIMUM_CURVE,
        };
        fig6_angle.marks.push(dot(opt_deg));
        fig6_speed.marks.push(dot(optimum.speed));
    }

    let mut fig7_angle = Panel::new(angle_space.clone(), "Softest-shot angle by release height");
    let mut fig7_speed = Panel::new(
        speed_space.clone(),
        "Speed of the softest shot by release height",
    );
    for (row, curve) in others.iter().enumerate() {
        let style = if curve.release_altitude == params.release_altitude {
            OPTIMUM_CURVE
        } else {
            OPTIMUM_CONTEXT
        };
        let (a, v) = curve_marks(curve, style);
        fig7_angle.marks.push(a);
        fig7_angle.marks.extend(legend_entry(
            &angle_space,
            row,
            format!("a = {} m", short(curve.release_altitude)),
            style,
        ));
        fig7_speed.marks.push(v);
    }

    let d = short(params.distance);
    let a = short(params.release_altitude);
    let hh = short(params.hoop_height);
    let alts: Vec<String> = inputs.altitudes.iter().map(|v| short(*v)).collect();
    let captions = [
        format!("A shooter {d} m from a hoop {hh} m high releases the ball at {a} m."),
        format!(
            "Left: a {angle_deg:.0}\u{b0} shot at {} m/s. Right: the same angle at several launch speeds.",
            short(inputs.featured_speed)
        ),
        format!("At {angle_deg:.0}\u{b0} from {a} m, a launch speed of {v_hoop:.1} m/s reaches the hoop."),
        format!(
            "Speed needed to reach the hoop against launch angle; it is smallest at {opt_deg:.1}\u{b0} with {:.1} m/s.",
            optimum.speed
        ),
        format!(
            "Softest-shot angle and its speed against distance, for release heights of {} m.",
            alts.join(", ")
        ),
    ];

    use ColorRole::*;
    use StrategyTag::*;
    let stages = vec![
        stage(
            1,
            vec![physical.clone()],
            &[Baseline],
            &[DefineAbstractSpace],
            captions[0].clone(),
        ),
        stage(
            2,
            vec![physical.clone(), physical.clone()],
            &[Baseline, Concrete],
            &[ExpandSampling],
            captions[1].clone(),
        ),
        stage(
            3,
            vec![physical],
            &[Baseline, Concrete, Solution],
            &[ModeledOrOptimizedValues],
            captions[2].clone(),
        ),
        stage(
            4,
            vec![velocity_space.clone(), velocity_space],
            &[Baseline, Solution, Optimum],
            &[
                DefineAbstractSpace,
                ModeledOrOptimizedValues,
                UnfixParameter,
            ],
            captions[3].clone(),
        ),
        stage(
            5,
            vec![angle_space, speed_space],
            &[Optimum],
            &[DefineAbstractSpace, ExpandSampling, UnfixParameter],
            captions[4].clone(),
        ),
    ];
    let spec = LadderSpec::new(stages)?;

    let side_by_side = |panels: Vec<Panel>, caption: &String| {
        let mut scene = Scene::new(caption.clone(), Layout::SideBySide, panels);
        scene.width = render::DEFAULT_WIDTH * scene.panels.len() as f64;
        scene
    };
    let scenes = vec![
        Scene::new(captions[0].clone(), Layout::Single, vec![fig1]),
        side_by_side(vec![single, several], &captions[1]),
        Scene::new(captions[2].clone(), Layout::Single, vec![fig3]),
        Scene::new(captions[3].clone(), Layout::Single, vec![fig4.clone()]),
        side_by_side(vec![fig4, fig5], &captions[3]),
        Scene::new(
            captions[4].clone(),
            Layout::StackedSharedX,
            vec![fig6_angle, fig6_speed],
        ),
        Scene::new(
            captions[4].clone(),
            Layout::StackedSharedX,
            vec![fig7_angle, fig7_speed],
        ),
    ];
    Ok((spec, scenes))
}
