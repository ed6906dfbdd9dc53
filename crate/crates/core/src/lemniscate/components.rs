use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::Field;

/// Bounding box of the grid nodes of one component.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BBox {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl BBox {
    pub fn straddles_imaginary_axis(&self, margin: f64) -> bool {
        self.x_min < -margin && self.x_max > margin
    }
}

/// A connected piece of `{|p| <= rho}` on the grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Component {
    /// Indices of the roots of `p` inside this component.
    pub roots: Vec<usize>,
    pub bbox: BBox,
    #[serde(skip)]
    pub nodes: usize,
    #[serde(skip)]
    pub touches_boundary: bool,
}

/// Node labels (`u32::MAX` outside) plus the components they index.
#[derive(Debug, Clone)]
pub(crate) struct Labelling {
    pub labels: Vec<u32>,
    pub components: Vec<Component>,
}

pub(crate) const OUTSIDE: u32 = u32::MAX;

/// Flood fill of the nodes with `|p| <= level`.
///
/// Nodes are 4-connected; diagonal neighbours are joined as well when the
/// average of the cell corners is inside, matching the saddle rule of the
/// contour extraction.
pub(crate) fn label(field: &Field, level: f64) -> Labelling {
    let spec = *field.spec();
    let res = spec.resolution;
    let inside = |i: usize, j: usize| field.at(i, j) <= level;
    let centre_inside = |i: usize, j: usize| {
        0.25 * (field.at(i, j) + field.at(i + 1, j) + field.at(i + 1, j + 1) + field.at(i, j + 1))
            <= level
    };
    let mut labels = vec![OUTSIDE; res * res];
    let mut components = Vec::new();
    let mut stack = Vec::new();
    for j0 in 0..res {
        for i0 in 0..res {
            if labels[spec.index(i0, j0)] != OUTSIDE || !inside(i0, j0) {
                continue;
            }
            let id = components.len() as u32;
            labels[spec.index(i0, j0)] = id;
            stack.push((i0, j0));
            let mut bbox = BBox {
                x_min: f64::INFINITY,
                x_max: f64::NEG_INFINITY,
                y_min: f64::INFINITY,
                y_max: f64::NEG_INFINITY,
            };
            let mut nodes = 0;
            let mut touches_boundary = false;
            while let Some((i, j)) = stack.pop() {
                nodes += 1;
                let (x, y) = (spec.x(i), spec.y(j));
                bbox.x_min = bbox.x_min.min(x);
                bbox.x_max = bbox.x_max.max(x);
                bbox.y_min = bbox.y_min.min(y);
                bbox.y_max = bbox.y_max.max(y);
                if i == 0 || j == 0 || i == res - 1 || j == res - 1 {
                    touches_boundary = true;
                }
                let mut visit = |ni: usize, nj: usize, stack: &mut Vec<(usize, usize)>| {
                    let k = spec.index(ni, nj);
                    if labels[k] == OUTSIDE && inside(ni, nj) {
                        labels[k] = id;
                        stack.push((ni, nj));
                    }
                };
                if i > 0 {
                    visit(i - 1, j, &mut stack);
                }
                if i + 1 < res {
                    visit(i + 1, j, &mut stack);
                }
                if j > 0 {
                    visit(i, j - 1, &mut stack);
                }
                if j + 1 < res {
                    visit(i, j + 1, &mut stack);
                }
                // Diagonals through saddle cells.
                for (di, dj) in [(-1i64, -1i64), (1, -1), (-1, 1), (1, 1)] {
                    let (ni, nj) = (i as i64 + di, j as i64 + dj);
                    if ni < 0 || nj < 0 || ni >= res as i64 || nj >= res as i64 {
                        continue;
                    }
                    let (ni, nj) = (ni as usize, nj as usize);
                    let (ci, cj) = (i.min(ni), j.min(nj));
                    if centre_inside(ci, cj) {
                        visit(ni, nj, &mut stack);
                    }
                }
            }
            components.push(Component {
                roots: Vec::new(),
                bbox,
                nodes,
                touches_boundary,
            });
        }
    }
    Labelling { labels, components }
}

impl Labelling {
    /// Component holding the node nearest to `z`, searching a small
    /// neighbourhood when that node itself is outside.
    pub fn component_of(&self, field: &Field, z: Complex64) -> Option<usize> {
        let spec = field.spec();
        let (i0, j0) = spec.nearest_node(z)?;
        let res = spec.resolution as i64;
        let mut best: Option<(f64, usize)> = None;
        for dj in -2i64..=2 {
            for di in -2i64..=2 {
                let (i, j) = (i0 as i64 + di, j0 as i64 + dj);
                if i < 0 || j < 0 || i >= res || j >= res {
                    continue;
                }
                let (i, j) = (i as usize, j as usize);
                let l = self.labels[spec.index(i, j)];
                if l == OUTSIDE {
                    continue;
                }
                let dist = (spec.point(i, j) - z).norm();
                if best.map(|(d, _)| dist < d).unwrap_or(true) {
                    best = Some((dist, l as usize));
                }
            }
        }
        best.map(|(_, l)| l)
    }

    pub fn label_at(&self, field: &Field, i: usize, j: usize) -> Option<usize> {
        let l = self.labels[field.spec().index(i, j)];
        (l != OUTSIDE).then_some(l as usize)
    }
}
