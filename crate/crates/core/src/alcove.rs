//! Alcove geometry: elements as triangles of the Coxeter complex, and SVG
//! pictures of lower intervals.
//!
//! Points use integer weight coordinates `(a, b)`. The fundamental alcove
//! has vertices `(0,0)`, `(1,0)`, `(0,1)`; the walls are the lines `a = k`,
//! `b = k` and `a + b = k`. A vertex has type `(a - b) mod 3`, and the
//! wall of an alcove colored `s_i` is the one opposite its vertex of type
//! `i mod 3`. Only the SVG writer leaves exact arithmetic, when it shears
//! the lattice into equilateral shape.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::coxeter::{elements_up_to, lower_interval, theta_elt, Elt, Gen, Word};
use crate::error::{Error, Result};
use crate::report::{Report, VerifyReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub a: i64,
    pub b: i64,
}

impl Point {
    pub const fn new(a: i64, b: i64) -> Point {
        Point { a, b }
    }

    pub fn kind(self) -> usize {
        (self.a - self.b).rem_euclid(3) as usize
    }

    /// Squared length in the invariant metric.
    pub fn norm(self) -> i64 {
        self.a * self.a + self.a * self.b + self.b * self.b
    }

    fn sub(self, o: Point) -> Point {
        Point::new(self.a - o.a, self.b - o.b)
    }

    fn add(self, o: Point) -> Point {
        Point::new(self.a + o.a, self.b + o.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Up,
    Down,
}

/// An alcove, with its vertices stored by type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triangle {
    vertices: [Point; 3],
}

pub const FUNDAMENTAL: Triangle = Triangle {
    vertices: [Point::new(0, 0), Point::new(1, 0), Point::new(0, 1)],
};

fn gen_kind(s: Gen) -> usize {
    (s.index() % 3) as usize
}

impl Triangle {
    /// Builds a triangle from three points of pairwise distinct types.
    pub fn from_points(points: [Point; 3]) -> Result<Triangle> {
        let mut vertices = [None; 3];
        for p in points {
            if vertices[p.kind()].replace(p).is_some() {
                return Err(Error::Precondition(format!("two vertices of type {}", p.kind())));
            }
        }
        Ok(Triangle {
            vertices: vertices.map(|p| p.expect("three distinct types")),
        })
    }

    pub fn vertices(&self) -> [Point; 3] {
        self.vertices
    }

    pub fn vertex(&self, kind: usize) -> Point {
        self.vertices[kind]
    }

    pub fn orientation(&self) -> Orientation {
        let total: i64 = self.vertices.iter().map(|p| p.a + p.b).sum();
        if total.rem_euclid(3) == 2 {
            Orientation::Up
        } else {
            Orientation::Down
        }
    }

    /// Twice the signed area; `±1` for every alcove.
    pub fn doubled_area(&self) -> i64 {
        let [p, q, r] = self.vertices;
        let (u, w) = (q.sub(p), r.sub(p));
        u.a * w.b - u.b * w.a
    }

    pub fn barycenter(&self) -> (Ratio<i64>, Ratio<i64>) {
        let a = self.vertices.iter().map(|p| p.a).sum();
        let b = self.vertices.iter().map(|p| p.b).sum();
        (Ratio::new(a, 3), Ratio::new(b, 3))
    }

    /// The two endpoints of the wall colored `s`.
    pub fn edge(&self, s: Gen) -> (Point, Point) {
        let k = gen_kind(s);
        let (p, q) = (self.vertices[(k + 1) % 3], self.vertices[(k + 2) % 3]);
        (p.min(q), p.max(q))
    }

    /// Reflection across the wall colored `s`.
    pub fn reflect(&self, s: Gen) -> Triangle {
        let k = gen_kind(s);
        let mut vertices = self.vertices;
        vertices[k] = self.vertices[(k + 1) % 3]
            .add(self.vertices[(k + 2) % 3])
            .sub(self.vertices[k]);
        Triangle { vertices }
    }

    /// Whether this is a triangle of the standard tiling.
    pub fn is_alcove(&self) -> bool {
        let lo = Point::new(
            self.vertices.iter().map(|p| p.a).min().unwrap_or(0),
            self.vertices.iter().map(|p| p.b).min().unwrap_or(0),
        );
        let mut shape: Vec<Point> = self.vertices.iter().map(|p| p.sub(lo)).collect();
        shape.sort();
        shape == [Point::new(0, 0), Point::new(0, 1), Point::new(1, 0)]
            || shape == [Point::new(0, 1), Point::new(1, 0), Point::new(1, 1)]
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [p, q, r] = self.vertices;
        write!(f, "[({},{}) ({},{}) ({},{})]", p.a, p.b, q.a, q.b, r.a, r.b)
    }
}

/// The alcove reached by walking `word` from the fundamental alcove.
pub fn triangle_along(word: &Word) -> Triangle {
    word.letters().iter().fold(FUNDAMENTAL, |t, &s| t.reflect(s))
}

pub fn elt_to_triangle(x: Elt) -> Triangle {
    triangle_along(&x.canonical_word())
}

/// Offsets between same-type vertices whose stars share an edge.
const STAR_NEIGHBOURS: [Point; 6] = [
    Point::new(1, 1),
    Point::new(-1, -1),
    Point::new(2, -1),
    Point::new(-2, 1),
    Point::new(1, -2),
    Point::new(-1, 2),
];

/// Vertex types `t` for which `alcoves` is a union of full stars around
/// type-`t` vertices, with the star centers.
pub fn star_decompositions(alcoves: &BTreeSet<Triangle>) -> Vec<(usize, BTreeSet<Point>)> {
    (0..3)
        .filter_map(|t| {
            let mut around: BTreeMap<Point, usize> = BTreeMap::new();
            for tri in alcoves {
                *around.entry(tri.vertex(t)).or_default() += 1;
            }
            around
                .values()
                .all(|&c| c == 6)
                .then(|| (t, around.into_keys().collect()))
        })
        .collect()
}

pub fn interval_alcoves(x: Elt) -> BTreeSet<Triangle> {
    lower_interval(x).into_iter().map(elt_to_triangle).collect()
}

fn single_decomposition(r: &mut Report, label: &str, alcoves: &BTreeSet<Triangle>) -> Option<(usize, BTreeSet<Point>)> {
    let mut found = star_decompositions(alcoves);
    r.check(
        format!("{label} is a union of stars of one type"),
        found.len() == 1,
        "1 type",
        format!("{} types", found.len()),
    );
    (found.len() == 1).then(|| found.remove(0))
}

/// `<= theta(m,0)` as a filled equilateral triangle of stars centered on a
/// vertex of the fundamental alcove, whose medians lie on walls.
pub fn region_is_equilateral_triangle(m: usize) -> Result<VerifyReport> {
    if m > 4 {
        return Err(Error::Precondition(format!("region check needs m <= 4, got {m}")));
    }
    let mut r = Report::new("equilateral-region").param("m", m);
    let alcoves = interval_alcoves(theta_elt(m, 0));
    let expected = 6 * (m + 1) * (m + 2) / 2;
    r.expect_eq("alcove count", &expected, &alcoves.len());
    let Some((kind, centers)) = single_decomposition(&mut r, "region", &alcoves) else {
        return Ok(r.finish());
    };
    r.info("star_type", kind);
    r.expect_eq("star count", &((m + 1) * (m + 2) / 2), &centers.len());

    let pts: Vec<Point> = centers.iter().copied().collect();
    let diameter = pts
        .iter()
        .flat_map(|p| pts.iter().map(move |q| p.sub(*q).norm()))
        .max()
        .unwrap_or(0);
    let corners: Vec<Point> = pts
        .iter()
        .copied()
        .filter(|p| pts.iter().any(|q| p.sub(*q).norm() == diameter))
        .collect();
    let corners = if diameter == 0 { vec![pts[0]; 3] } else { corners };
    if !r.check("three corners", corners.len() == 3, 3, corners.len()) {
        return Ok(r.finish());
    }
    let sides: Vec<i64> = (0..3).map(|i| corners[i].sub(corners[(i + 1) % 3]).norm()).collect();
    r.check(
        "equilateral",
        sides.iter().all(|&d| d == diameter),
        diameter,
        format!("{sides:?}"),
    );

    let (sa, sb): (i64, i64) = (corners.iter().map(|p| p.a).sum(), corners.iter().map(|p| p.b).sum());
    let center_ok = sa % 3 == 0 && sb % 3 == 0 && FUNDAMENTAL.vertices().contains(&Point::new(sa / 3, sb / 3));
    r.check(
        "centroid is a vertex of the fundamental alcove",
        center_ok,
        "vertex",
        format!("({sa}/3,{sb}/3)"),
    );
    if center_ok {
        let o = Point::new(sa / 3, sb / 3);
        r.info("center", [o.a, o.b]);
        for c in &corners {
            let d = c.sub(o);
            r.check(
                format!("median through ({},{}) is a wall", c.a, c.b),
                d.a == 0 || d.b == 0 || d.a + d.b == 0,
                "wall",
                format!("{d:?}"),
            );
        }
    }

    let inside = |p: Point| {
        let side = |u: Point, v: Point| {
            let (e, f) = (v.sub(u), p.sub(u));
            e.a * f.b - e.b * f.a
        };
        let s = [
            side(corners[0], corners[1]),
            side(corners[1], corners[2]),
            side(corners[2], corners[0]),
        ];
        s.iter().all(|&x| x >= 0) || s.iter().all(|&x| x <= 0)
    };
    let (lo_a, hi_a) = (
        pts.iter().map(|p| p.a).min().unwrap_or(0),
        pts.iter().map(|p| p.a).max().unwrap_or(0),
    );
    let (lo_b, hi_b) = (
        pts.iter().map(|p| p.b).min().unwrap_or(0),
        pts.iter().map(|p| p.b).max().unwrap_or(0),
    );
    let filled: BTreeSet<Point> = (lo_a..=hi_a)
        .flat_map(|a| (lo_b..=hi_b).map(move |b| Point::new(a, b)))
        .filter(|p| p.kind() == kind && inside(*p))
        .collect();
    r.check("stars fill the hull", filled == centers, filled.len(), centers.len());
    Ok(r.finish())
}

/// `<= theta(m+1,n+1)` is `<= theta(m,n)` together with every star of the
/// same type adjacent to it.
pub fn verify_hexagon_geometry(m: usize, n: usize) -> VerifyReport {
    let mut r = Report::new("hexagon-geometry").param("m", m).param("n", n);
    let small = interval_alcoves(theta_elt(m, n));
    let large = interval_alcoves(theta_elt(m + 1, n + 1));
    let (Some((t0, inner)), Some((t1, outer))) = (
        single_decomposition(&mut r, "inner", &small),
        single_decomposition(&mut r, "outer", &large),
    ) else {
        return r.finish();
    };
    r.expect_eq("star type", &t0, &t1);
    r.info("star_type", t0);
    let grown: BTreeSet<Point> = inner
        .iter()
        .flat_map(|c| STAR_NEIGHBOURS.iter().map(move |d| c.add(*d)))
        .chain(inner.iter().copied())
        .collect();
    r.check(
        "outer = inner + adjacent stars",
        grown == outer,
        grown.len(),
        outer.len(),
    );
    r.info("added_stars", outer.len() - inner.len());
    r.finish()
}

/// Triangles of all elements up to `max_len` are alcoves with distinct
/// barycenters; a second reduced word gives the same triangle; neighbours
/// across `s` share exactly the `s`-colored wall.
pub fn verify_tessellation(max_len: usize) -> VerifyReport {
    let mut r = Report::new("tessellation").param("max_len", max_len);
    let mut seen: BTreeMap<(Ratio<i64>, Ratio<i64>), Elt> = BTreeMap::new();
    for x in elements_up_to(max_len) {
        let t = elt_to_triangle(x);
        r.check(
            format!("{x} is an alcove"),
            t.is_alcove() && t.doubled_area().abs() == 1,
            "alcove",
            format!("{t:?}"),
        );
        if let Some(prev) = seen.insert(t.barycenter(), x) {
            r.mismatch(format!("{x} overlaps {prev}"), "distinct", "same barycenter");
        }
        r.expect_eq_with(
            || format!("{x} along descending word"),
            &t,
            &triangle_along(&descending_word(x)),
        );
        for s in Gen::all() {
            let u = elt_to_triangle(x.mul_right_gen(s));
            let shared: Vec<Point> = t.vertices().into_iter().filter(|p| u.vertices().contains(p)).collect();
            let (p, q) = t.edge(s);
            r.check(
                format!("{x}, {x}{s} share the {s} wall"),
                shared.len() == 2 && shared.contains(&p) && shared.contains(&q) && u.edge(s) == (p, q),
                "one common wall",
                shared.len(),
            );
        }
    }
    r.finish()
}

/// A reduced word that peels the largest right descent.
fn descending_word(x: Elt) -> Word {
    let mut letters = Vec::new();
    let mut y = x;
    while let Some(&s) = y.right_descents().last() {
        letters.push(s);
        y = y.mul_right_gen(s);
    }
    letters.reverse();
    Word(letters)
}

const SCALE: f64 = 40.0;
const MARGIN: f64 = 12.0;
const LIGHT: u8 = 0xd9;
const DARK: u8 = 0x70;

pub fn edge_color(s: Gen) -> &'static str {
    match s.index() {
        1 => "#e41a1c",
        2 => "#2ca02c",
        _ => "#1f5fd6",
    }
}

/// Fill for level `k` out of `levels`, light (innermost) to dark.
pub fn gray(k: usize, levels: usize) -> String {
    let span = (LIGHT - DARK) as usize;
    let steps = levels.max(3) - 1;
    let g = LIGHT as usize - span * k.min(steps) / steps;
    format!("#{g:02x}{g:02x}{g:02x}")
}

fn project(p: Point) -> (f64, f64) {
    project_f(p.a as f64, p.b as f64)
}

fn coord(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

fn sort_key(x: &Elt) -> (usize, String) {
    (x.length(), x.to_string())
}

/// Gray levels for `<= x` and each interval in `nest`, innermost first: an
/// element gets the level of the smallest given interval containing it.
pub fn nested_shading(x: Elt, nest: &[Elt]) -> Vec<(Elt, usize)> {
    let mut intervals: Vec<BTreeSet<Elt>> = std::iter::once(x)
        .chain(nest.iter().copied())
        .map(lower_interval)
        .collect();
    intervals.sort_by_key(|s| s.len());
    intervals.dedup();
    let mut level: BTreeMap<Elt, usize> = BTreeMap::new();
    for (k, set) in intervals.iter().enumerate() {
        for &y in set {
            level.entry(y).or_insert(k);
        }
    }
    let mut out: Vec<(Elt, usize)> = level.into_iter().collect();
    out.sort_by_cached_key(|(y, k)| (*k, sort_key(y)));
    out
}

/// Renders the shaded alcoves with their walls colored by generator, a
/// black dot on the identity and a yellow dot on each marked element.
pub fn render_svg(shading: &[(Elt, usize)], marks: &[Elt]) -> String {
    let levels = shading.iter().map(|&(_, k)| k + 1).max().unwrap_or(1);
    let mut shading: Vec<(Elt, usize)> = shading.to_vec();
    shading.sort_by_cached_key(|(y, k)| (*k, sort_key(y)));
    let tris: Vec<(Elt, usize, Triangle)> = shading.iter().map(|&(y, k)| (y, k, elt_to_triangle(y))).collect();

    let mut points: Vec<(f64, f64)> = tris.iter().flat_map(|(_, _, t)| t.vertices().map(project)).collect();
    points.push(project(Point::new(0, 0)));
    let min_x = points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min) - MARGIN;
    let max_x = points.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max) + MARGIN;
    let min_y = points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min) - MARGIN;
    let max_y = points.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max) + MARGIN;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}" width="{}" height="{}">"#,
        coord(min_x),
        coord(min_y),
        coord(max_x - min_x),
        coord(max_y - min_y),
        coord(max_x - min_x),
        coord(max_y - min_y)
    );
    let _ = writeln!(out, r#"<g id="alcoves" stroke="none">"#);
    for (y, k, t) in &tris {
        let pts: Vec<String> = t
            .vertices()
            .iter()
            .map(|p| {
                let (px, py) = project(*p);
                format!("{},{}", coord(px), coord(py))
            })
            .collect();
        let _ = writeln!(
            out,
            r#"<polygon data-elt="{}" data-level="{k}" points="{}" fill="{}"/>"#,
            if y.is_identity() {
                "e".to_string()
            } else {
                y.to_string()
            },
            pts.join(" "),
            gray(*k, levels)
        );
    }
    let _ = writeln!(out, "</g>");

    let mut edges: BTreeMap<(Point, Point), Gen> = BTreeMap::new();
    for (_, _, t) in &tris {
        for s in Gen::all() {
            edges.insert(t.edge(s), s);
        }
    }
    let _ = writeln!(out, r#"<g id="walls" stroke-width="1.5" stroke-linecap="round">"#);
    for ((p, q), s) in &edges {
        let ((x1, y1), (x2, y2)) = (project(*p), project(*q));
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}"/>"#,
            coord(x1),
            coord(y1),
            coord(x2),
            coord(y2),
            edge_color(*s)
        );
    }
    let _ = writeln!(out, "</g>");

    let dot = |out: &mut String, x: Elt, fill: &str, r: f64| {
        let (bx, by) = elt_to_triangle(x).barycenter();
        let p = |v: Ratio<i64>| *v.numer() as f64 / *v.denom() as f64;
        let (cx, cy) = project_f(p(bx), p(by));
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="{}" fill="{fill}" stroke="black" stroke-width="0.5"/>"#,
            coord(cx),
            coord(cy),
            coord(r)
        );
    };
    dot(&mut out, Elt::IDENTITY, "black", 5.0);
    let mut marks: Vec<Elt> = marks.to_vec();
    marks.sort_by_cached_key(sort_key);
    marks.dedup();
    for x in marks {
        dot(&mut out, x, "#ffd700", 3.5);
    }
    let _ = writeln!(out, "</svg>");
    out
}

fn project_f(a: f64, b: f64) -> (f64, f64) {
    ((a + b / 2.0) * SCALE + 0.0, -(b * 3f64.sqrt() / 2.0) * SCALE + 0.0)
}

/// SVG of `<= x`, with nested intervals in further gray levels.
pub fn interval_svg(x: Elt, nest: &[Elt]) -> String {
    let shading = nested_shading(x, nest);
    let marks: Vec<Elt> = std::iter::once(x).chain(nest.iter().copied()).collect();
    render_svg(&shading, &marks)
}

/// Number of shaded alcoves in an SVG produced by [`render_svg`].
pub fn count_shaded(svg: &str) -> usize {
    svg.matches("<polygon ").count()
}
