use std::fs;
use std::path::{Path, PathBuf};

use hoopladder::ladder::{
    build_basketball_ladder, ColorRole, LadderInputs, PlotSpace, Range, Variable,
};
use hoopladder::render::{
    export_figures, figure_file_name, plot_rects, render_svg, Dash, Layout, Mark, Panel,
    RenderError, Scene, Style, DASHED_PATTERN, DOTTED_PATTERN,
};

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn scenes() -> Vec<Scene> {
    build_basketball_ladder(&LadderInputs::default()).unwrap().1
}

fn space() -> PlotSpace {
    PlotSpace {
        x_var: Variable::new("x", "m"),
        y_var: Variable::new("y", "m"),
        x_range: Range::new(0.0, 10.0),
        y_range: Range::new(0.0, 5.0),
        aspect: 1.0,
    }
}

fn text(bytes: Vec<u8>) -> String {
    String::from_utf8(bytes).unwrap()
}

// Set UPDATE_GOLDEN=1 to rewrite the checked-in files after an intended change.
#[test]
fn figures_match_golden_files() {
    let (spec, scenes) = build_basketball_ladder(&LadderInputs::default()).unwrap();
    let dir = golden_dir();
    let mut expected: Vec<(String, Vec<u8>)> = scenes
        .iter()
        .enumerate()
        .map(|(i, s)| (figure_file_name(i), render_svg(s).unwrap()))
        .collect();
    expected.push((
        "ladder.json".into(),
        format!("{}\n", spec.to_json()).into_bytes(),
    ));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::create_dir_all(&dir).unwrap();
        for (name, bytes) in &expected {
            fs::write(dir.join(name), bytes).unwrap();
        }
    }
    for (name, bytes) in &expected {
        let golden = fs::read(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(golden == *bytes, "{name} differs from its golden copy");
    }
}

#[test]
fn rendering_is_deterministic() {
    let a: Vec<_> = scenes().iter().map(|s| render_svg(s).unwrap()).collect();
    let b: Vec<_> = scenes().iter().map(|s| render_svg(s).unwrap()).collect();
    assert_eq!(a, b);
}

#[test]
fn empty_scene_has_only_frame() {
    let bare = text(render_svg(&Scene::new("", Layout::Single, vec![])).unwrap());
    let lines: Vec<&str> = bare.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("<?xml"));
    assert!(lines[1].starts_with("<svg ") && lines[1].contains("width=\"600.000\""));
    assert_eq!(
        lines[2],
        "<rect x=\"0.000\" y=\"0.000\" width=\"600.000\" height=\"450.000\" fill=\"#FFFFFF\"/>"
    );
    assert_eq!(lines[3], "</svg>");

    let titled = text(render_svg(&Scene::new("a < b", Layout::Single, vec![])).unwrap());
    assert_eq!(titled.lines().nth(2), Some("<title>a &lt; b</title>"));
    assert_eq!(titled.lines().count(), 5);
}

#[test]
fn polyline_maps_through_the_plot_rectangle() {
    let mut panel = Panel::new(space(), "");
    panel.marks.push(Mark::Polyline {
        points: vec![(0.0, 0.0), (10.0, 5.0)],
        style: Style::solid(ColorRole::Concrete, 2.0),
    });
    let scene = Scene::new("", Layout::Single, vec![panel]);
    let r = plot_rects(&scene)[0];
    // Aspect 1 with a 2:1 data box means the rectangle is twice as wide as tall.
    assert!((r.width - 2.0 * r.height).abs() < 1e-9);
    assert!(r.x >= 0.0 && r.right() <= 600.0 && r.y >= 0.0 && r.bottom() <= 450.0);
    let svg = text(render_svg(&scene).unwrap());
    let expected = format!(
        "<polyline points=\"{:.3},{:.3} {:.3},{:.3}\" fill=\"none\" stroke=\"#CC0000\"",
        r.x,
        r.y + r.height,
        r.x + r.width,
        r.y
    );
    assert!(svg.contains(&expected), "{svg}");
}

#[test]
fn out_of_range_data_is_clipped() {
    let mut panel = Panel::new(space(), "");
    panel.marks.push(Mark::Polyline {
        points: vec![(-10.0, 2.5), (20.0, 2.5)],
        style: Style::solid(ColorRole::Solution, 1.0),
    });
    panel.marks.push(Mark::Point {
        x: 50.0,
        y: 1.0,
        radius: 3.0,
        style: Style::solid(ColorRole::Optimum, 1.0),
    });
    let scene = Scene::new("", Layout::Single, vec![panel]);
    let r = plot_rects(&scene)[0];
    let svg = text(render_svg(&scene).unwrap());
    let mid = r.y + 0.5 * r.height;
    assert!(svg.contains(&format!(
        "points=\"{:.3},{mid:.3} {:.3},{mid:.3}\"",
        r.x,
        r.right()
    )));
    assert!(!svg.contains("<circle"));
}

#[test]
fn every_coordinate_stays_on_the_canvas() {
    for scene in scenes() {
        let svg = text(render_svg(&scene).unwrap());
        for attr in [
            " x=\"", " y=\"", " cx=\"", " cy=\"", " x1=\"", " x2=\"", " y1=\"", " y2=\"",
        ] {
            for piece in svg.split(attr).skip(1) {
                let v: f64 = piece[..piece.find('"').unwrap()].parse().unwrap();
                let limit = if attr.contains('x') {
                    scene.width
                } else {
                    scene.height
                };
                assert!((0.0..=limit).contains(&v), "{attr}{v} in {}", scene.caption);
            }
        }
        for piece in svg.split("points=\"").skip(1) {
            for pair in piece[..piece.find('"').unwrap()].split(' ') {
                let (x, y) = pair.split_once(',').unwrap();
                let (x, y): (f64, f64) = (x.parse().unwrap(), y.parse().unwrap());
                assert!(plot_rects(&scene).iter().any(|r| x >= r.x - 1e-3
                    && x <= r.right() + 1e-3
                    && y >= r.y - 1e-3
                    && y <= r.bottom() + 1e-3));
            }
        }
        assert!(!svg.contains("-0.000") && !svg.contains("NaN") && !svg.contains("inf"));
    }
}

#[test]
fn numbers_use_three_decimals() {
    let svg = text(render_svg(&scenes()[0]).unwrap());
    let body = &svg[svg.find("<title>").unwrap()..];
    for piece in body.split("=\"").skip(1) {
        let value = &piece[..piece.find('"').unwrap()];
        if let Ok(v) = value.parse::<f64>() {
            let decimals = value.split_once('.').map(|(_, d)| d.len());
            assert_eq!(decimals, Some(3), "{value} ({v})");
        }
    }
}

#[test]
fn dash_patterns() {
    assert_eq!(Dash::Solid.pattern(), None);
    assert_eq!(Dash::Dashed.pattern(), Some(DASHED_PATTERN));
    assert_eq!(Dash::Dotted.pattern(), Some(DOTTED_PATTERN));
    assert_eq!(DASHED_PATTERN, [6.0, 4.0]);
    assert_eq!(DOTTED_PATTERN, [2.0, 3.0]);
    let svg = text(render_svg(&scenes()[4]).unwrap());
    assert!(svg.contains("stroke-dasharray=\"2.000,3.000\""));
    assert!(svg.contains("stroke-dasharray=\"6.000,4.000\""));
}

#[test]
fn export_writes_numbered_files() {
    let dir = tempfile::tempdir().unwrap();
    let paths = export_figures(&scenes(), dir.path()).unwrap();
    assert_eq!(paths.len(), 7);
    for (i, path) in paths.iter().enumerate() {
        assert_eq!(
            path.file_name().unwrap().to_str().unwrap(),
            format!("figure_{:02}.svg", i + 1)
        );
        assert_eq!(fs::read(path).unwrap(), render_svg(&scenes()[i]).unwrap());
    }
    assert!(export_figures(&[], dir.path()).unwrap().is_empty());
}

#[test]
fn export_names_the_bad_directory() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("plain-file");
    fs::write(&file, b"x").unwrap();
    match export_figures(&scenes(), &file) {
        Err(err @ RenderError::Io { .. }) => {
            assert!(err.to_string().contains("plain-file"), "{err}")
        }
        other => panic!("expected Io error, got {other:?}"),
    }
}

#[test]
fn layouts_are_checked() {
    let two = vec![Panel::new(space(), "a"), Panel::new(space(), "b")];
    assert!(matches!(
        render_svg(&Scene::new("", Layout::Single, two.clone())),
        Err(RenderError::Layout(_))
    ));
    let mut shifted = two;
    shifted[1].space.x_range = Range::new(0.0, 11.0);
    assert!(matches!(
        render_svg(&Scene::new("", Layout::StackedSharedX, shifted)),
        Err(RenderError::Layout(_))
    ));
    let mut panel = Panel::new(space(), "");
    panel.marks.push(Mark::Polyline {
        points: vec![(1.0, 1.0)],
        style: Style::solid(ColorRole::Baseline, 1.0),
    });
    assert!(matches!(
        render_svg(&Scene::new("", Layout::Single, vec![panel])),
        Err(RenderError::InvalidMark { .. })
    ));
}
