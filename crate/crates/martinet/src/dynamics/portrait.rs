//! Phase-portrait assembly and emission.
//!
//! Seeds are laid out on a uniform grid over the requested window and
//! integrated in both time directions through the execution layer. Output
//! is deterministic: paths are ordered by seed index and direction, and
//! both emitters format floats reproducibly, so identical invocations
//! produce byte-identical artifacts.

use serde::Serialize;

use crate::exec;
use crate::jets::Jet;
use crate::mufields::PlanarMuField;

use super::{
    equilibria_on_line_of, fixed_line_detect, rk4_path, EquilibriumKind, EquilibriumReport,
    FixedLocus, IntegrationOptions, RootOptions, StopReason, Window,
};

/// Portrait configuration.
#[derive(Clone, Copy, Debug)]
pub struct PortraitOptions {
    pub window: Window,
    /// Seeds per axis; the portrait integrates `grid * grid` of them.
    pub grid: usize,
    pub step: f64,
    /// Step cap per time direction.
    pub max_steps: usize,
    pub root_tol: f64,
}

impl Default for PortraitOptions {
    fn default() -> Self {
        PortraitOptions {
            window: Window::new(-2.0, 1.0, -2.0, 2.0),
            grid: 20,
            step: super::DEFAULT_STEP,
            max_steps: 2000,
            root_tol: super::DEFAULT_ROOT_TOL,
        }
    }
}

/// One integrated curve.
#[derive(Clone, Debug, Serialize)]
pub struct PortraitPath {
    /// Sequential id: `2 * seed_index` forward, `2 * seed_index + 1`
    /// backward.
    pub id: usize,
    pub points: Vec<[f64; 3]>,
}

/// A complete portrait of one family member.
#[derive(Clone, Debug, Serialize)]
pub struct Portrait {
    pub window: Window,
    pub paths: Vec<PortraitPath>,
    pub equilibria: Vec<EquilibriumReport>,
    pub fixed_locus: FixedLocus,
    /// Seeds whose integration went non-finite and were dropped.
    pub failed_paths: usize,
}

/// Integrates a portrait of the field generated by `f` over the window.
pub fn phase_portrait(generator: &Jet<f64>, opts: &PortraitOptions) -> Portrait {
    assert!(opts.grid > 0, "seed grid must be positive");
    let field = PlanarMuField::from_function(generator.clone());
    let window = opts.window;
    let integration = IntegrationOptions {
        step: opts.step,
        t_end: opts.step * opts.max_steps as f64,
        bounds: window,
        max_steps: Some(opts.max_steps),
    };

    // Cell-centred seeds keep the boundary rows from exiting immediately.
    let mut seeds = Vec::with_capacity(opts.grid * opts.grid);
    for i in 0..opts.grid {
        for j in 0..opts.grid {
            let fx = (i as f64 + 0.5) / opts.grid as f64;
            let fy = (j as f64 + 0.5) / opts.grid as f64;
            seeds.push([
                window.x_min + fx * (window.x_max - window.x_min),
                window.y_min + fy * (window.y_max - window.y_min),
            ]);
        }
    }

    let pairs = exec::map_collect(&seeds, |&seed| {
        let forward = rk4_path(&field, seed, &integration, 1.0);
        let backward = rk4_path(&field, seed, &integration, -1.0);
        [forward, backward]
    });

    let mut paths = Vec::with_capacity(2 * seeds.len());
    let mut failed_paths = 0;
    for (seed_index, pair) in pairs.into_iter().enumerate() {
        for (dir, traj) in pair.into_iter().enumerate() {
            if traj.stop == StopReason::NonFinite {
                failed_paths += 1;
                continue;
            }
            paths.push(PortraitPath {
                id: 2 * seed_index + dir,
                points: traj.points,
            });
        }
    }

    let root_opts = RootOptions {
        interval: (window.y_min, window.y_max),
        root_tol: opts.root_tol,
    };
    let equilibria = if window.x_min <= -1.0 && window.x_max >= -1.0 {
        equilibria_on_line_of(generator, &root_opts)
    } else {
        Vec::new()
    };

    Portrait {
        window,
        paths,
        equilibria,
        fixed_locus: fixed_line_detect(generator, 1e-9),
        failed_paths,
    }
}

const VIEWPORT: f64 = 800.0;

impl Portrait {
    /// Renders to a fixed 800x800 SVG viewport with a linear world map.
    /// Equilibria are filled circles (saddle red, node blue, degenerate
    /// black); fixed lines are dotted.
    pub fn to_svg(&self) -> String {
        let w = &self.window;
        let sx = |x: f64| VIEWPORT * (x - w.x_min) / (w.x_max - w.x_min);
        let sy = |y: f64| VIEWPORT * (w.y_max - y) / (w.y_max - w.y_min);

        let mut svg = String::with_capacity(1 << 16);
        svg.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{v}\" height=\"{v}\" viewBox=\"0 0 {v} {v}\">\n",
            v = VIEWPORT
        ));
        svg.push_str(&format!(
            "<rect width=\"{v}\" height=\"{v}\" fill=\"white\"/>\n",
            v = VIEWPORT
        ));

        // Light coordinate axes when visible.
        if w.x_min <= 0.0 && w.x_max >= 0.0 {
            svg.push_str(&format!(
                "<line x1=\"{:.2}\" y1=\"0\" x2=\"{:.2}\" y2=\"{v}\" stroke=\"#ddd\" stroke-width=\"1\"/>\n",
                sx(0.0),
                sx(0.0),
                v = VIEWPORT
            ));
        }
        if w.y_min <= 0.0 && w.y_max >= 0.0 && self.fixed_locus != FixedLocus::XAxis {
            svg.push_str(&format!(
                "<line x1=\"0\" y1=\"{:.2}\" x2=\"{v}\" y2=\"{:.2}\" stroke=\"#ddd\" stroke-width=\"1\"/>\n",
                sy(0.0),
                sy(0.0),
                v = VIEWPORT
            ));
        }

        for path in &self.paths {
            if path.points.len() < 2 {
                continue;
            }
            let mut points = String::with_capacity(path.points.len() * 12);
            for (i, p) in path.points.iter().enumerate() {
                if i > 0 {
                    points.push(' ');
                }
                points.push_str(&format!("{:.2},{:.2}", sx(p[1]), sy(p[2])));
            }
            svg.push_str(&format!(
                "<polyline points=\"{points}\" fill=\"none\" stroke=\"#666\" stroke-width=\"0.7\"/>\n"
            ));
        }

        match self.fixed_locus {
            FixedLocus::XAxis => {
                if w.y_min <= 0.0 && w.y_max >= 0.0 {
                    svg.push_str(&format!(
                        "<line x1=\"0\" y1=\"{:.2}\" x2=\"{v}\" y2=\"{:.2}\" stroke=\"black\" stroke-width=\"1.5\" stroke-dasharray=\"4 4\"/>\n",
                        sy(0.0),
                        sy(0.0),
                        v = VIEWPORT
                    ));
                }
            }
            FixedLocus::WholePlane | FixedLocus::NoLine => {}
        }

        for eq in &self.equilibria {
            let color = match eq.kind {
                EquilibriumKind::Saddle => "red",
                EquilibriumKind::Node | EquilibriumKind::Focus => "blue",
                EquilibriumKind::Degenerate | EquilibriumKind::OnFixedLine => "black",
            };
            svg.push_str(&format!(
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"5\" fill=\"{color}\"/>\n",
                sx(eq.point[0]),
                sy(eq.point[1]),
            ));
        }

        svg.push_str("</svg>\n");
        svg
    }

    /// CSV rows `trajectory,t,x,y`, one per vertex, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("trajectory,t,x,y\n");
        for path in &self.paths {
            for p in &path.points {
                out.push_str(&format!(
                    "{},{:.16e},{:.16e},{:.16e}\n",
                    path.id, p[0], p[1], p[2]
                ));
            }
        }
        out
    }
}
