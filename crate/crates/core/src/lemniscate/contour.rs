use std::collections::HashMap;

use num_complex::Complex64;

use super::grid::Field;

/// One contour curve, as the list of its vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub points: Vec<Complex64>,
    /// True when the curve returns to its first vertex.
    pub closed: bool,
    /// Grid node on the inside of the first crossing, used to attach the
    /// curve to a sublevel component.
    pub(crate) inside_node: (usize, usize),
}

/// Edge ids: `2 * node` for the edge to the right neighbour, `2 * node + 1`
/// for the edge to the upper neighbour.
fn edge_id(res: usize, i: usize, j: usize, vertical: bool) -> usize {
    2 * (j * res + i) + usize::from(vertical)
}

struct Crossing {
    point: Complex64,
    inside_node: (usize, usize),
}

/// Marching squares on `field` at `level`, with linear interpolation along
/// cell edges. Saddle cells are resolved by the average of their corners.
pub(crate) fn march(field: &Field, level: f64) -> Vec<Polyline> {
    let spec = *field.spec();
    let res = spec.resolution;
    let inside = |i: usize, j: usize| field.at(i, j) <= level;

    let mut vertex_of_edge: HashMap<usize, usize> = HashMap::new();
    let mut crossings: Vec<Crossing> = Vec::new();
    let mut neighbours: Vec<[usize; 2]> = Vec::new();
    let mut degree: Vec<u8> = Vec::new();

    let mut crossing = |i: usize, j: usize, vertical: bool, crossings: &mut Vec<Crossing>| -> usize {
        let id = edge_id(res, i, j, vertical);
        *vertex_of_edge.entry(id).or_insert_with(|| {
            let (i1, j1) = if vertical { (i, j + 1) } else { (i + 1, j) };
            let (f0, f1) = (field.at(i, j), field.at(i1, j1));
            let t = ((level - f0) / (f1 - f0)).clamp(0.0, 1.0);
            let a = spec.point(i, j);
            let b = spec.point(i1, j1);
            let inside_node = if f0 <= level { (i, j) } else { (i1, j1) };
            crossings.push(Crossing {
                point: a + (b - a) * t,
                inside_node,
            });
            crossings.len() - 1
        })
    };

    let mut segments: Vec<(usize, usize)> = Vec::new();
    for j in 0..res - 1 {
        for i in 0..res - 1 {
            // Corners: 0 = (i,j), 1 = (i+1,j), 2 = (i+1,j+1), 3 = (i,j+1).
            let corner = [
                inside(i, j),
                inside(i + 1, j),
                inside(i + 1, j + 1),
                inside(i, j + 1),
            ];
            // Edges: 0 bottom (c0-c1), 1 right (c1-c2), 2 top (c3-c2), 3 left (c0-c3).
            let cut = [
                corner[0] != corner[1],
                corner[1] != corner[2],
                corner[3] != corner[2],
                corner[0] != corner[3],
            ];
            let count = cut.iter().filter(|&&c| c).count();
            if count == 0 {
                continue;
            }
            let mut edge = |e: usize, crossings: &mut Vec<Crossing>| match e {
                0 => crossing(i, j, false, crossings),
                1 => crossing(i + 1, j, true, crossings),
                2 => crossing(i, j + 1, false, crossings),
                _ => crossing(i, j, true, crossings),
            };
            if count == 2 {
                let mut it = (0..4).filter(|&e| cut[e]);
                let (a, b) = (it.next().unwrap(), it.next().unwrap());
                let va = edge(a, &mut crossings);
                let vb = edge(b, &mut crossings);
                segments.push((va, vb));
            } else {
                let centre = 0.25
                    * (field.at(i, j) + field.at(i + 1, j) + field.at(i + 1, j + 1) + field.at(i, j + 1));
                let centre_inside = centre <= level;
                // Cut off the corners whose state differs from the centre.
                // Corner k is adjacent to edges (k+3)%4 and k.
                for k in 0..4 {
                    if corner[k] != centre_inside {
                        let va = edge((k + 3) % 4, &mut crossings);
                        let vb = edge(k, &mut crossings);
                        segments.push((va, vb));
                    }
                }
            }
        }
    }

    neighbours.resize(crossings.len(), [usize::MAX; 2]);
    degree.resize(crossings.len(), 0);
    for &(a, b) in &segments {
        for (x, y) in [(a, b), (b, a)] {
            let k = degree[x] as usize;
            if k < 2 {
                neighbours[x][k] = y;
                degree[x] += 1;
            }
        }
    }

    let mut visited = vec![false; crossings.len()];
    let mut lines = Vec::new();
    let walk = |start: usize, visited: &mut Vec<bool>| {
        let mut order = vec![start];
        visited[start] = true;
        let mut prev = usize::MAX;
        let mut cur = start;
        let mut closed = false;
        loop {
            let next = neighbours[cur]
                .iter()
                .copied()
                .take(degree[cur] as usize)
                .find(|&n| n != prev && !visited[n]);
            match next {
                Some(n) => {
                    visited[n] = true;
                    order.push(n);
                    prev = cur;
                    cur = n;
                }
                None => {
                    if order.len() > 2
                        && neighbours[cur][..degree[cur] as usize].contains(&start)
                    {
                        closed = true;
                    }
                    break;
                }
            }
        }
        let mut points: Vec<Complex64> = order.iter().map(|&v| crossings[v].point).collect();
        if closed {
            points.push(points[0]);
        }
        Polyline {
            points,
            closed,
            inside_node: crossings[start].inside_node,
        }
    };
    // Open chains (ending on the box boundary) first, then loops.
    for v in 0..crossings.len() {
        if !visited[v] && degree[v] == 1 {
            lines.push(walk(v, &mut visited));
        }
    }
    for v in 0..crossings.len() {
        if !visited[v] && degree[v] > 0 {
            lines.push(walk(v, &mut visited));
        }
    }
    lines
}
