//! Polylines through a chain of faces, described intrinsically by one
//! position per crossed edge.
//!
//! Face `i` of the chain is bounded by crossed edges `i` and `i + 1`, which
//! meet at the face's common vertex `V_i` under the planar angle `θ_i`. A
//! point on edge `i` is stored as `t_i`, its signed distance from the
//! lower-labelled endpoint. The segment in face `i` is then the third side of
//! the triangle with sides `x`, `y` (distances from `V_i`) and angle `θ_i`,
//! so lengths and their derivatives follow from the law of cosines without
//! ever placing the chain in a global chart.

use crate::combinatorics::CrossingSequence;
use crate::labels::{EdgeLabel, FaceLabel, Vertex};
use crate::space::SpaceKind;
use crate::tetra::TetraGeometry;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChainError {
    #[error("consecutive crossings {0} and {1} do not bound a common face")]
    NotAdjacent(EdgeLabel, EdgeLabel),
    #[error("Newton iteration did not converge (residual {0:e})")]
    NoConvergence(f64),
    #[error("singular Hessian")]
    Singular,
}

/// Length of the third side and its derivatives in the two adjacent sides.
#[derive(Clone, Copy, Debug)]
pub(crate) struct SideEval {
    pub d: f64,
    pub dx: f64,
    pub dy: f64,
    pub dxx: f64,
    pub dyy: f64,
    pub dxy: f64,
}

/// Third side of the triangle with sides `x`, `y` enclosing angle `theta`.
/// Negative `x` or `y` stand for points on the extensions beyond the vertex.
pub(crate) fn third_side(space: SpaceKind, x: f64, y: f64, theta: f64) -> SideEval {
    let s2 = (theta / 2.0).sin().powi(2);
    let ct = theta.cos();
    match space {
        SpaceKind::Euclidean => {
            let d = ((x - y).powi(2) + 4.0 * x * y * s2).max(0.0).sqrt();
            let dx = (x - y * ct) / d;
            let dy = (y - x * ct) / d;
            SideEval {
                d,
                dx,
                dy,
                dxx: (1.0 - dx * dx) / d,
                dyy: (1.0 - dy * dy) / d,
                dxy: (-ct - dx * dy) / d,
            }
        }
        _ => {
            let k = space.k();
            let (sx, sy) = (space.sn(x), space.sn(y));
            let (cx, cy) = (space.cs(x), space.cs(y));
            let h = space.sn((x - y) / 2.0).powi(2) + sx * sy * s2;
            let d = match space {
                SpaceKind::Spherical => 2.0 * h.clamp(0.0, 1.0).sqrt().asin(),
                _ => 2.0 * h.max(0.0).sqrt().asinh(),
            };
            let (sd, cd) = (space.sn(d), space.cs(d));
            let dx = (sx * cy - cx * sy * ct) / sd;
            let dy = (sy * cx - cy * sx * ct) / sd;
            SideEval {
                d,
                dx,
                dy,
                dxx: cd * (1.0 - dx * dx) / sd,
                dyy: cd * (1.0 - dy * dy) / sd,
                dxy: (-k * sx * sy - cx * cy * ct - cd * dx * dy) / sd,
            }
        }
    }
}

/// Inverse of `sn`: arcsin, identity or arsinh.
pub(crate) fn asn(space: SpaceKind, v: f64) -> f64 {
    match space {
        SpaceKind::Euclidean => v,
        SpaceKind::Spherical => v.clamp(-1.0, 1.0).asin(),
        SpaceKind::Hyperbolic => v.asinh(),
    }
}

#[derive(Clone, Debug)]
pub struct Chain {
    pub space: SpaceKind,
    /// Crossed edges `0..=n`; edge `n` is edge `0` again.
    pub edges: Vec<EdgeLabel>,
    pub len: Vec<f64>,
    pub faces: Vec<FaceLabel>,
    pub common: Vec<Vertex>,
    pub theta: Vec<f64>,
    /// `+1` when the common vertex of face `i` is the lower endpoint of edge `i`.
    sx: Vec<f64>,
    /// `+1` when the common vertex of face `i` is the lower endpoint of edge `i + 1`.
    sy: Vec<f64>,
    /// Strip vertex ids of the (lower, upper) endpoint of every edge.
    pub vertex_ids: Vec<[usize; 2]>,
    /// Side of every strip vertex: `true` for the left of the path.
    pub vertex_left: Vec<bool>,
}

impl Chain {
    pub fn new(spec: &dyn TetraGeometry, seq: &CrossingSequence) -> Result<Chain, ChainError> {
        let n = seq.len();
        let edges: Vec<EdgeLabel> = (0..=n).map(|i| seq.at(i as isize)).collect();
        let len = edges.iter().map(|e| spec.edge_length(*e)).collect();
        let mut faces = Vec::with_capacity(n);
        let mut common = Vec::with_capacity(n);
        let mut theta = Vec::with_capacity(n);
        let mut sx = Vec::with_capacity(n);
        let mut sy = Vec::with_capacity(n);
        for i in 0..n {
            let (e, f) = (edges[i], edges[i + 1]);
            let v = e.common_vertex(f).ok_or(ChainError::NotAdjacent(e, f))?;
            let face = FaceLabel::spanned(e, f).ok_or(ChainError::NotAdjacent(e, f))?;
            faces.push(face);
            common.push(v);
            theta.push(spec.face_angle(face, v));
            sx.push(if e.lo == v { 1.0 } else { -1.0 });
            sy.push(if f.lo == v { 1.0 } else { -1.0 });
        }
        // strip vertices: edge 0 gives ids 0 (left) and 1 (right); every face
        // adds the far end of its outgoing edge on the side of the far end of
        // its incoming edge
        let mut vertex_ids = vec![[0usize, 1usize]];
        let mut vertex_left = vec![true, false];
        for i in 0..n {
            let ids = vertex_ids[i];
            let e = edges[i];
            let v = common[i];
            let (vid, oid) = if e.lo == v { (ids[0], ids[1]) } else { (ids[1], ids[0]) };
            let nid = vertex_left.len();
            vertex_left.push(vertex_left[oid]);
            let f = edges[i + 1];
            vertex_ids.push(if f.lo == v { [vid, nid] } else { [nid, vid] });
        }
        Ok(Chain {
            space: spec.space(),
            edges,
            len,
            faces,
            common,
            theta,
            sx,
            sy,
            vertex_ids,
            vertex_left,
        })
    }

    /// Number of faces.
    pub fn n(&self) -> usize {
        self.faces.len()
    }

    fn x_of(&self, i: usize, t: f64) -> f64 {
        if self.sx[i] > 0.0 {
            t
        } else {
            self.len[i] - t
        }
    }

    fn y_of(&self, i: usize, t: f64) -> f64 {
        if self.sy[i] > 0.0 {
            t
        } else {
            self.len[i + 1] - t
        }
    }

    /// Segment in face `i` with derivatives taken in `t_i` and `t_{i+1}`.
    pub(crate) fn segment(&self, i: usize, ti: f64, tj: f64) -> SideEval {
        let s = third_side(self.space, self.x_of(i, ti), self.y_of(i, tj), self.theta[i]);
        let (a, b) = (self.sx[i], self.sy[i]);
        SideEval { d: s.d, dx: a * s.dx, dy: b * s.dy, dxx: s.dxx, dyy: s.dyy, dxy: a * b * s.dxy }
    }

    pub fn length(&self, t: &[f64]) -> f64 {
        (0..self.n()).map(|i| self.segment(i, t[i], t[i + 1]).d).sum()
    }

    pub fn segment_lengths(&self, t: &[f64]) -> Vec<f64> {
        (0..self.n()).map(|i| self.segment(i, t[i], t[i + 1]).d).collect()
    }

    /// Gradient and Hessian of the length in `t_0..t_n` (dense).
    fn derivatives(&self, t: &[f64]) -> (Vec<f64>, Vec<Vec<f64>>) {
        let m = self.n() + 1;
        let mut g = vec![0.0; m];
        let mut h = vec![vec![0.0; m]; m];
        for i in 0..self.n() {
            let s = self.segment(i, t[i], t[i + 1]);
            g[i] += s.dx;
            g[i + 1] += s.dy;
            h[i][i] += s.dxx;
            h[i + 1][i + 1] += s.dyy;
            h[i][i + 1] += s.dxy;
            h[i + 1][i] += s.dxy;
        }
        (g, h)
    }

    /// Critical point of the length with `t_0` and `t_n` held fixed.
    pub fn solve_fixed_ends(&self, t: &mut [f64]) -> Result<usize, ChainError> {
        let n = self.n();
        let free: Vec<usize> = (1..n).collect();
        self.newton(t, &free, false)
    }

    /// Critical point of the length with the positions at `fixed` held.
    pub fn solve_with_fixed(&self, t: &mut [f64], fixed: &[usize]) -> Result<usize, ChainError> {
        let free: Vec<usize> = (0..=self.n()).filter(|i| !fixed.contains(i)).collect();
        self.newton(t, &free, false)
    }

    /// Closed critical polyline: `t_n` is tied to `t_0`.
    pub fn solve_periodic(&self, t: &mut [f64]) -> Result<usize, ChainError> {
        let free: Vec<usize> = (0..self.n()).collect();
        self.newton(t, &free, true)
    }

    /// Reduced gradient and Hessian over the free variables; with `periodic`
    /// the variable `t_n` is identified with `t_0`.
    fn reduced(&self, t: &[f64], free: &[usize], periodic: bool) -> (Vec<f64>, Vec<Vec<f64>>) {
        let (g, h) = self.derivatives(t);
        let n = self.n();
        let fold = |i: usize| if periodic && i == n { 0 } else { i };
        let pos: Vec<Option<usize>> = (0..=n)
            .map(|i| free.iter().position(|&f| f == fold(i)))
            .collect();
        let m = free.len();
        let mut rg = vec![0.0; m];
        let mut rh = vec![vec![0.0; m]; m];
        for i in 0..=n {
            if let Some(a) = pos[i] {
                rg[a] += g[i];
                for j in 0..=n {
                    if let Some(b) = pos[j] {
                        rh[a][b] += h[i][j];
                    }
                }
            }
        }
        (rg, rh)
    }

    fn newton(&self, t: &mut [f64], free: &[usize], periodic: bool) -> Result<usize, ChainError> {
        let n = self.n();
        let scale = self.len.iter().fold(0.0f64, |a, &b| a.max(b));
        let sync = |t: &mut [f64]| {
            if periodic {
                t[n] = t[0];
            }
        };
        sync(t);
        let resid = |t: &[f64]| {
            let (g, _) = self.reduced(t, free, periodic);
            g.iter().fold(0.0f64, |a, &b| a.max(b.abs()))
        };
        let mut r = resid(t);
        for it in 0..200 {
            if r < 1e-14 {
                return Ok(it);
            }
            let seg = self.segment_lengths(t);
            let (g, h) = self.reduced(t, free, periodic);
            let step = solve_dense(h, g.iter().map(|v| -v).collect()).ok_or(ChainError::Singular)?;
            let smax = step.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
            // keep single steps within a fraction of the edge scale
            let mut lam = if smax > 0.5 * scale { 0.5 * scale / smax } else { 1.0 };
            let mut accepted = false;
            for _ in 0..60 {
                let mut trial = t.to_vec();
                for (k, &f) in free.iter().enumerate() {
                    trial[f] += lam * step[k];
                }
                sync(&mut trial);
                // a segment may shrink toward its corner only gradually, so the
                // iterate cannot jump across a vertex of the strip
                let collapse = self.segment_lengths(&trial).iter().zip(&seg).any(|(&a, &b)| !(a >= 0.25 * b));
                let rt = if collapse { f64::INFINITY } else { resid(&trial) };
                if rt.is_finite() && (rt < r || rt < 1e-14) {
                    t.copy_from_slice(&trial);
                    r = rt;
                    accepted = true;
                    break;
                }
                lam *= 0.5;
            }
            if !accepted {
                // no further decrease at machine precision is convergence
                if r < 1e-11 {
                    return Ok(it);
                }
                return Err(ChainError::NoConvergence(r));
            }
            if smax * lam < 1e-16 * (1.0 + scale) && r < 1e-11 {
                return Ok(it);
            }
        }
        if r < 1e-11 {
            Ok(200)
        } else {
            Err(ChainError::NoConvergence(r))
        }
    }

    /// `∂L/∂t_i` at every crossing; for a closed polyline entry `0` combines
    /// the first and last faces.
    pub fn gradient(&self, t: &[f64], periodic: bool) -> Vec<f64> {
        let (mut g, _) = self.derivatives(t);
        if periodic {
            let last = g.pop().unwrap_or(0.0);
            g[0] += last;
        }
        g
    }

    /// Angle at crossing `i` between the ray to the lower endpoint of edge `i`
    /// and the outgoing segment (`i < n`), resp. the incoming segment (`i > 0`).
    /// The polyline is straight at `i` when the two sum to π.
    pub fn crossing_angles(&self, t: &[f64], i: usize) -> (Option<f64>, Option<f64>) {
        let n = self.n();
        // ∂d/∂t along the edge away from the lower endpoint is −cos(angle to lower end)
        let out = (i < n).then(|| {
            let s = self.segment(i, t[i], t[i + 1]);
            (-s.dx).clamp(-1.0, 1.0).acos()
        });
        let inc = (i > 0).then(|| {
            let s = self.segment(i - 1, t[i - 1], t[i]);
            (-s.dy).clamp(-1.0, 1.0).acos()
        });
        (out, inc)
    }

    /// Signed distances from the endpoints of edge `i` to the complete
    /// geodesic carrying the segment of face `i` (face `n - 1` for the last
    /// crossing): positive while the endpoint is on its own side.
    pub fn endpoint_margins(&self, t: &[f64], i: usize) -> [f64; 2] {
        let n = self.n();
        let sd = if i < n {
            self.segment(i, t[i], t[i + 1]).dx
        } else {
            self.segment(n - 1, t[n - 1], t[n]).dy
        };
        let sin_phi = (1.0 - sd * sd).max(0.0).sqrt();
        let sp = self.space;
        [asn(sp, sp.sn(t[i]) * sin_phi), asn(sp, sp.sn(self.len[i] - t[i]) * sin_phi)]
    }

    /// Signed distance of every strip vertex to the path, taken over the
    /// crossings of edges at that vertex.
    pub fn vertex_margins(&self, t: &[f64]) -> Vec<f64> {
        let mut out = vec![f64::INFINITY; self.vertex_left.len()];
        for i in 0..=self.n() {
            let m = self.endpoint_margins(t, i);
            for k in 0..2 {
                let id = self.vertex_ids[i][k];
                out[id] = out[id].min(m[k]);
            }
        }
        out
    }

    /// Minimum endpoint margin over crossings `0..n`, with the crossing index.
    pub fn min_margin(&self, t: &[f64]) -> (usize, f64) {
        let mut best = (0, f64::INFINITY);
        for i in 0..self.n() {
            let m = self.endpoint_margins(t, i);
            let v = m[0].min(m[1]);
            if v < best.1 {
                best = (i, v);
            }
        }
        best
    }
}

/// Gaussian elimination with partial pivoting.
pub(crate) fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))?;
        if !(a[p][c].abs() > 1e-300) {
            return None;
        }
        a.swap(c, p);
        b.swap(c, p);
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            if f != 0.0 {
                for k in c..n {
                    a[r][k] -= f * a[c][k];
                }
                b[r] -= f * b[c];
            }
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|k| a[r][k] * x[k]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}
