//! Backtracking enumeration of boundary tilings.
//!
//! A boundary tiling is a set of non-overlapping tiles inside `ABC` whose
//! edges cover the three sides, with at most one α, one β and one γ at every
//! vertex on a side, two α at `A`, one β at `B`, and α + β at `C`.
//!
//! The walk starts at `B`, goes down `BA`, along `AC` and up `CB`, keeping the
//! interior on the left. Each step lays one tile with an edge on the side,
//! starting at the current vertex. The angles at a vertex on a side sum to π
//! and hence are exactly one α, one β and one γ; when the two tiles meeting
//! there along the side leave a gap, the third angle is a tile filling it,
//! which is placed at once.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::numtheory::TileSpec;
use crate::quadfield::{orient, Angle, DirectionTable, Point};
use crate::tiling::{AngleLabel, EdgeLabel, Frame, PlacedTile, Tiling};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Emit {
    First,
    All,
}

/// Name of the fixed enumeration order; part of the statistics contract.
pub const NODE_ORDER: &str = "walk B->A->C->B; edge a,b,c; trailing angle alpha,beta,gamma; filler edge order a,b,c first";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub max_nodes: Option<u64>,
    pub emit: Emit,
    /// Keep up to this many abandoned partial tilings.
    pub record_rejected: usize,
    pub threads: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { max_nodes: None, emit: Emit::All, record_rejected: 0, threads: 1 }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Partial boundary tilings visited.
    pub nodes: u64,
    /// Candidate tiles tried (side tiles and gap fillers).
    pub placements_tried: u64,
    /// Visited partial tilings with no admissible extension.
    pub backtracks: u64,
    /// Candidates rejected because the rest of the side cannot be a sum of tile edges.
    pub rejected_length: u64,
    /// Candidates rejected by an angle budget at a vertex on a side or corner.
    pub rejected_angle: u64,
    /// Candidates rejected for overlapping a tile or leaving the triangle.
    pub rejected_overlap: u64,
}

impl SearchStats {
    fn add(&mut self, o: &SearchStats) {
        self.nodes += o.nodes;
        self.placements_tried += o.placements_tried;
        self.backtracks += o.backtracks;
        self.rejected_length += o.rejected_length;
        self.rejected_angle += o.rejected_angle;
        self.rejected_overlap += o.rejected_overlap;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SearchStatus {
    /// The whole search space was explored.
    Exhausted,
    /// `max_nodes` was reached first.
    NodeLimit,
    /// `Emit::First` and one boundary tiling was found.
    StoppedAtFirst,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// Boundary tilings (partial), sorted by [`canonicalize`] key.
    pub found: Vec<Tiling>,
    pub stats: SearchStats,
    pub status: SearchStatus,
    pub rejected: Vec<Tiling>,
}

/// Can `remaining` be written as a nonnegative integer combination of `sides`?
pub fn prune_length_feasible(remaining: u64, sides: [u64; 3]) -> bool {
    feasibility_table(remaining, sides)[remaining as usize]
}

fn feasibility_table(max: u64, sides: [u64; 3]) -> Vec<bool> {
    let mut ok = vec![false; max as usize + 1];
    ok[0] = true;
    for i in 1..=max as usize {
        ok[i] = sides.iter().any(|&s| s as usize <= i && s > 0 && ok[i - s as usize]);
    }
    ok
}

/// Order-independent key of a set of tiles.
pub fn canonicalize(t: &Tiling) -> String {
    let mut parts: Vec<String> = t
        .tiles
        .iter()
        .map(|tile| {
            [&tile.v_alpha, &tile.v_beta, &tile.v_gamma]
                .iter()
                .map(|p| format!("{},{}", p.x.serialize(), p.y.serialize()))
                .collect::<Vec<_>>()
                .join(";")
        })
        .collect();
    parts.sort();
    parts.join("|")
}

#[derive(Clone)]
struct STile {
    tile: PlacedTile,
    f: [(f64, f64); 3],
    bbox: [f64; 4],
}

impl STile {
    fn new(tile: PlacedTile) -> Self {
        let f = [tile.v_alpha.to_f64(), tile.v_beta.to_f64(), tile.v_gamma.to_f64()];
        let bbox = tile.float_bbox();
        STile { tile, f, bbox }
    }

    fn points(&self) -> [&Point; 3] {
        [&self.tile.v_alpha, &self.tile.v_beta, &self.tile.v_gamma]
    }
}

const FLOAT_GUARD: f64 = 1e-6;

/// Orientation with a float filter. The float determinant decides only when
/// it clears a margin many orders of magnitude above its rounding error;
/// otherwise the exact predicate runs.
fn orient_f(a: &Point, fa: (f64, f64), b: &Point, fb: (f64, f64), c: &Point, fc: (f64, f64)) -> i8 {
    let (ux, uy, vx, vy) = (fb.0 - fa.0, fb.1 - fa.1, fc.0 - fa.0, fc.1 - fa.1);
    let det = ux * vy - uy * vx;
    let margin = 1e-9 * (ux.abs() + uy.abs() + 1.0) * (vx.abs() + vy.abs() + 1.0);
    if det > margin {
        1
    } else if det < -margin {
        -1
    } else {
        orient(a, b, c)
    }
}

fn overlap(s: &STile, t: &STile) -> bool {
    fn separated(s: &STile, t: &STile) -> bool {
        let sp = s.points();
        let tp = t.points();
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let side = orient_f(sp[i], s.f[i], sp[j], s.f[j], sp[k], s.f[k]);
            if (0..3).all(|v| orient_f(sp[i], s.f[i], sp[j], s.f[j], tp[v], t.f[v]) * side <= 0) {
                return true;
            }
        }
        false
    }
    !(separated(s, t) || separated(t, s))
}

fn label_bit(l: AngleLabel) -> usize {
    l.index()
}

/// The two tile edges meeting at the vertex with angle `l`.
fn edges_at(l: AngleLabel) -> [EdgeLabel; 2] {
    let mut out = EdgeLabel::ALL.iter().copied().filter(|e| e.opposite() != l);
    [out.next().expect("two edges"), out.next().expect("two edges")]
}

fn other_end(e: EdgeLabel, l: AngleLabel) -> AngleLabel {
    let (p, q) = e.endpoints();
    if p == l {
        q
    } else {
        p
    }
}

fn third_label(x: AngleLabel, y: AngleLabel) -> AngleLabel {
    AngleLabel::ALL.into_iter().find(|&l| l != x && l != y).expect("three labels")
}

fn make_tile(id: usize, verts: [(Point, AngleLabel); 3]) -> PlacedTile {
    let mut slots: [Option<Point>; 3] = [None, None, None];
    for (p, l) in verts {
        slots[l.index()] = Some(p);
    }
    let [a, b, c] = slots.map(|p| p.expect("each label once"));
    PlacedTile::new(id, a, b, c)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Reject {
    Angle,
    Overlap,
}

struct Ctx {
    spec: TileSpec,
    dirs: Arc<DirectionTable>,
    frame: Frame,
    corners_f: [(f64, f64); 3],
    lens: [u64; 3],
    side_lens: [u64; 3],
    walk: [Angle; 3],
    feasible: Vec<bool>,
}

impl Ctx {
    fn new(spec: &TileSpec) -> Ctx {
        let frame = Frame::canonical(spec);
        let [x, y, z] = spec.scaled_abc();
        let lens = spec.scaled_sides();
        let corners_f = [frame.a.to_f64(), frame.b.to_f64(), frame.c.to_f64()];
        Ctx {
            spec: spec.clone(),
            dirs: DirectionTable::shared(spec.m(), spec.k()),
            frame,
            corners_f,
            lens,
            side_lens: [z, y, x],
            walk: [Angle::new(4, 2), Angle::ZERO, Angle::new(1, 1)],
            feasible: feasibility_table(x.max(y).max(z), lens),
        }
    }

    fn len(&self, e: EdgeLabel) -> u64 {
        self.lens[e.index()]
    }

    fn step(&self, v: &Point, len: u64, a: Angle) -> Point {
        v + &self.dirs.dir(a).scale_int(len as i64)
    }

    /// Which corner (0 = A, 1 = B, 2 = C) `p` is, if any.
    fn corner(&self, p: &Point, fp: (f64, f64)) -> Option<usize> {
        (0..3).find(|&i| {
            let c = self.corners_f[i];
            (c.0 - fp.0).abs() < FLOAT_GUARD && (c.1 - fp.1).abs() < FLOAT_GUARD && *self.frame.corners()[i] == *p
        })
    }

    /// Sides are indexed A→B (0), A→C (1), C→B (2) for orientation tests.
    fn side_pairs(&self) -> [(usize, usize); 3] {
        [(0, 1), (0, 2), (2, 1)]
    }

    fn on_boundary(&self, p: &Point, fp: (f64, f64)) -> bool {
        let c = self.frame.corners();
        self.side_pairs().iter().any(|&(i, j)| orient_f(c[i], self.corners_f[i], c[j], self.corners_f[j], p, fp) == 0)
    }

    fn inside(&self, p: &Point, fp: (f64, f64)) -> bool {
        let c = self.frame.corners();
        // A, C, B is counter-clockwise
        let ccw = [(0, 2), (2, 1), (1, 0)];
        ccw.iter().all(|&(i, j)| orient_f(c[i], self.corners_f[i], c[j], self.corners_f[j], p, fp) >= 0)
    }
}

struct Worker<'a> {
    ctx: &'a Ctx,
    config: &'a SearchConfig,
    tiles: Vec<STile>,
    angles: HashMap<Point, [u8; 3]>,
    stats: SearchStats,
    found: Vec<Tiling>,
    rejected: Vec<Tiling>,
    budget: Option<u64>,
    limit_hit: bool,
    stop: bool,
    /// End of the walk up `CB` (offset from `C`) and the angle of the tile at `B` there.
    close: Option<(u64, AngleLabel)>,
    /// Restricts the tile at `B` to the one with this edge on `BA`.
    root_filter: Option<EdgeLabel>,
    root_extended: bool,
}

impl<'a> Worker<'a> {
    fn new(ctx: &'a Ctx, config: &'a SearchConfig, budget: Option<u64>) -> Self {
        Worker {
            ctx,
            config,
            tiles: Vec::new(),
            angles: HashMap::new(),
            stats: SearchStats::default(),
            found: Vec::new(),
            rejected: Vec::new(),
            budget,
            limit_hit: false,
            stop: false,
            close: None,
            root_filter: None,
            root_extended: false,
        }
    }

    fn present(&self, p: &Point) -> [u8; 3] {
        self.angles.get(p).copied().unwrap_or([0; 3])
    }

    fn check(&mut self, tile: &STile) -> Result<(), Reject> {
        let ctx = self.ctx;
        if !(0..3).all(|i| ctx.inside(tile.points()[i], tile.f[i])) {
            return Err(Reject::Overlap);
        }
        for (i, p) in tile.points().into_iter().enumerate() {
            let fp = tile.f[i];
            let l = AngleLabel::ALL[i];
            let have = self.present(p);
            match ctx.corner(p, fp) {
                Some(0) => {
                    if l != AngleLabel::Alpha || have[0] >= 2 {
                        return Err(Reject::Angle);
                    }
                }
                Some(1) => {
                    if l != AngleLabel::Beta || have[1] >= 1 {
                        return Err(Reject::Angle);
                    }
                }
                Some(_) => {
                    if l == AngleLabel::Gamma || have[label_bit(l)] >= 1 {
                        return Err(Reject::Angle);
                    }
                }
                None => {
                    if have[label_bit(l)] >= 1 && ctx.on_boundary(p, fp) {
                        return Err(Reject::Angle);
                    }
                }
            }
        }
        for other in &self.tiles {
            if crate::tiling::boxes_touch(&other.bbox, &tile.bbox) && overlap(other, tile) {
                return Err(Reject::Overlap);
            }
        }
        Ok(())
    }

    /// Tries a tile; on success pushes it and returns true.
    fn try_push(&mut self, tile: PlacedTile) -> bool {
        self.stats.placements_tried += 1;
        let st = STile::new(tile);
        match self.check(&st) {
            Ok(()) => {
                for (p, l) in st.tile.vertices() {
                    self.angles.entry(p.clone()).or_insert([0; 3])[l.index()] += 1;
                }
                self.tiles.push(st);
                true
            }
            Err(Reject::Angle) => {
                self.stats.rejected_angle += 1;
                false
            }
            Err(Reject::Overlap) => {
                self.stats.rejected_overlap += 1;
                false
            }
        }
    }

    fn pop(&mut self) {
        let st = self.tiles.pop().expect("pop after push");
        for (p, l) in st.tile.vertices() {
            let e = self.angles.get_mut(p).expect("recorded vertex");
            e[l.index()] -= 1;
            if *e == [0; 3] {
                self.angles.remove(p);
            }
        }
    }

    fn snapshot(&self) -> Tiling {
        let tiles = self
            .tiles
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let mut t = s.tile.clone();
                t.id = i;
                t
            })
            .collect();
        Tiling { spec: self.ctx.spec.clone(), frame: self.ctx.frame.clone(), tiles, partial: true }
    }

    /// Candidate fillers for the gap at `v` between the tile leading with
    /// `lead` along direction `w` and the tile trailing with `trail`.
    fn gap_fillers(&self, v: &Point, w: Angle, lead: AngleLabel, trail: AngleLabel) -> Option<Vec<PlacedTile>> {
        let have = self.present(v);
        if have.iter().filter(|&&c| c > 0).count() >= 3 {
            return None;
        }
        let x = third_label(lead, trail);
        let ctx = self.ctx;
        let r1 = w + lead.angle();
        let r2 = w + Angle::PI - trail.angle();
        let [g1, g2] = edges_at(x);
        let mut out = Vec::with_capacity(2);
        for (e1, e2) in [(g1, g2), (g2, g1)] {
            let p1 = ctx.step(v, ctx.len(e1), r1);
            let p2 = ctx.step(v, ctx.len(e2), r2);
            out.push(make_tile(0, [(v.clone(), x), (p1, other_end(e1, x)), (p2, other_end(e2, x))]));
        }
        Some(out)
    }

    /// Records where the walk up `CB` ends, given the edge of the tile at `B` along `BA`.
    fn set_close(&mut self, ba_edge: EdgeLabel) {
        let bc_edge = edges_at(AngleLabel::Beta).into_iter().find(|&x| x != ba_edge).expect("two edges at beta");
        let end = self.ctx.side_lens[2] - self.ctx.len(bc_edge);
        self.close = Some((end, other_end(bc_edge, AngleLabel::Beta)));
    }

    fn over_budget(&mut self) -> bool {
        if let Some(b) = self.budget {
            if self.stats.nodes >= b {
                self.limit_hit = true;
                return true;
            }
        }
        false
    }

    fn dead_end(&mut self) {
        self.stats.backtracks += 1;
        if self.root_filter.is_some() && self.tiles.is_empty() {
            return;
        }
        if self.rejected.len() < self.config.record_rejected {
            let snap = self.snapshot();
            self.rejected.push(snap);
        }
    }

    fn finish(&mut self) {
        self.found.push(self.snapshot());
        if self.config.emit == Emit::First {
            self.stop = true;
        }
    }

    /// Visits the partial tiling whose walk has reached offset `pos` of `side`
    /// at vertex `v`, where the last side tile has angle `trail`.
    fn node(&mut self, side: usize, pos: u64, v: &Point, trail: Option<AngleLabel>) {
        if self.stop || self.limit_hit || self.over_budget() {
            return;
        }
        self.stats.nodes += 1;
        let ctx = self.ctx;
        let (mut side, mut pos) = (side, pos);

        // corner A or C: switch sides
        let mut lead_req: Option<AngleLabel> = None;
        let mut corner = false;
        if side < 2 && pos == ctx.side_lens[side] {
            let t = trail.expect("a side ends with a tile");
            let next = match (side, t) {
                (0, AngleLabel::Alpha) => AngleLabel::Alpha,
                (1, AngleLabel::Alpha) => AngleLabel::Beta,
                (1, AngleLabel::Beta) => AngleLabel::Alpha,
                _ => {
                    self.stats.rejected_angle += 1;
                    self.dead_end();
                    return;
                }
            };
            lead_req = Some(next);
            corner = true;
            side += 1;
            pos = 0;
        }
        if trail.is_none() {
            lead_req = Some(AngleLabel::Beta);
            corner = true;
        }
        let w = ctx.walk[side];

        if side == 2 {
            let (end, at_end) = self.close.expect("tile at B placed first");
            if pos == end {
                let t = trail.expect("closing after a tile");
                match self.gap_fillers(v, w, at_end, t) {
                    None => self.finish(),
                    Some(fillers) => {
                        let mut any = false;
                        for f in fillers {
                            if self.try_push(f) {
                                any = true;
                                self.finish();
                                self.pop();
                                if self.stop {
                                    return;
                                }
                            }
                        }
                        if !any {
                            self.dead_end();
                        }
                    }
                }
                return;
            }
        }

        let limit = if side == 2 { self.close.expect("closing data").0 } else { ctx.side_lens[side] };
        let mut extended = false;
        for e in EdgeLabel::ALL {
            let (p, q) = e.endpoints();
            for t_label in AngleLabel::ALL {
                if t_label != p && t_label != q {
                    continue;
                }
                let lead = other_end(e, t_label);
                if lead_req.is_some_and(|r| r != lead) {
                    continue;
                }
                if trail.is_none() && self.root_filter.is_some_and(|f| f != e) {
                    continue;
                }
                if !corner && self.present(v)[lead.index()] > 0 {
                    self.stats.placements_tried += 1;
                    self.stats.rejected_angle += 1;
                    continue;
                }
                let len = ctx.len(e);
                if pos + len > limit || !ctx.feasible[(limit - pos - len) as usize] {
                    self.stats.placements_tried += 1;
                    self.stats.rejected_length += 1;
                    continue;
                }
                let far = ctx.step(v, len, w);
                let apex_label = third_label(lead, t_label);
                let apex = ctx.step(v, ctx.len(t_label.opposite()), w + lead.angle());
                let tile = make_tile(0, [(v.clone(), lead), (far.clone(), t_label), (apex, apex_label)]);
                if !self.try_push(tile) {
                    continue;
                }
                let saved_close = self.close;
                if trail.is_none() {
                    self.set_close(e);
                    self.root_extended = true;
                }
                if corner {
                    extended = true;
                    self.node(side, pos + len, &far, Some(t_label));
                } else {
                    let t = trail.expect("interior vertex follows a tile");
                    match self.gap_fillers(v, w, lead, t) {
                        None => {
                            extended = true;
                            self.node(side, pos + len, &far, Some(t_label));
                        }
                        Some(fillers) => {
                            for fl in fillers {
                                if self.try_push(fl) {
                                    extended = true;
                                    self.node(side, pos + len, &far, Some(t_label));
                                    self.pop();
                                }
                                if self.stop || self.limit_hit {
                                    break;
                                }
                            }
                        }
                    }
                }
                self.close = saved_close;
                self.pop();
                if self.stop || self.limit_hit {
                    return;
                }
            }
        }
        if !extended {
            self.dead_end();
        }
    }
}

/// Enumerates boundary tilings of `ABC` for the tile of `spec`.
pub fn boundary_search(spec: &TileSpec, config: &SearchConfig) -> SearchOutcome {
    let ctx = Ctx::new(spec);
    let threads = config.threads.max(1);
    let (r, stopped) = if threads == 1 || config.emit == Emit::First {
        run_root(&ctx, config, None, config.max_nodes)
    } else {
        parallel(&ctx, config, threads)
    };
    let Partial { mut found, stats, limit_hit, rejected, .. } = r;
    let mut keyed: Vec<(String, Tiling)> = found.drain(..).map(|t| (canonicalize(&t), t)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    let status = if stopped {
        SearchStatus::StoppedAtFirst
    } else if limit_hit {
        SearchStatus::NodeLimit
    } else {
        SearchStatus::Exhausted
    };
    SearchOutcome { found: keyed.into_iter().map(|(_, t)| t).collect(), stats, status, rejected }
}

struct Partial {
    found: Vec<Tiling>,
    stats: SearchStats,
    limit_hit: bool,
    rejected: Vec<Tiling>,
    root_extended: bool,
}

fn run_root(ctx: &Ctx, config: &SearchConfig, filter: Option<EdgeLabel>, budget: Option<u64>) -> (Partial, bool) {
    let mut w = Worker::new(ctx, config, budget);
    w.root_filter = filter;
    let b = ctx.frame.b.clone();
    w.node(0, 0, &b, None);
    let stop = w.stop;
    (
        Partial { found: w.found, stats: w.stats, limit_hit: w.limit_hit, rejected: w.rejected, root_extended: w.root_extended },
        stop,
    )
}

/// Runs the subtrees below the two possible tiles at `B` on separate threads
/// and merges them in order. When a node limit cuts a subtree short, that
/// subtree is rerun with the budget left over, so that results and statistics
/// match the single-threaded run exactly.
fn parallel(ctx: &Ctx, config: &SearchConfig, threads: usize) -> (Partial, bool) {
    let jobs = [EdgeLabel::A, EdgeLabel::C];
    let results: Vec<std::sync::Mutex<Option<Partial>>> = jobs.iter().map(|_| std::sync::Mutex::new(None)).collect();
    let next = std::sync::atomic::AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..threads.min(jobs.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= jobs.len() {
                    break;
                }
                let r = run_root(ctx, config, Some(jobs[i]), config.max_nodes).0;
                *results[i].lock().expect("result slot") = Some(r);
            });
        }
    });

    // each job visits the shared root once; count it once
    let mut out = Partial {
        found: Vec::new(),
        stats: SearchStats { nodes: 1, ..Default::default() },
        limit_hit: false,
        rejected: Vec::new(),
        root_extended: false,
    };
    for (i, slot) in results.into_iter().enumerate() {
        let mut r = slot.into_inner().expect("result slot").expect("job ran");
        if let Some(max) = config.max_nodes {
            let left = max.saturating_sub(out.stats.nodes) + 1;
            if r.limit_hit || r.stats.nodes > left {
                r = run_root(ctx, config, Some(jobs[i]), Some(left)).0;
            }
        }
        r.stats.nodes -= 1;
        if !r.root_extended && !r.limit_hit {
            r.stats.backtracks -= 1;
        }
        out.stats.add(&r.stats);
        out.found.extend(r.found);
        out.root_extended |= r.root_extended;
        for t in r.rejected {
            if out.rejected.len() < config.record_rejected {
                out.rejected.push(t);
            }
        }
        if r.limit_hit {
            out.limit_hit = true;
            break;
        }
    }
    if !out.root_extended && !out.limit_hit {
        out.stats.backtracks += 1;
        if out.rejected.len() < config.record_rejected {
            out.rejected.push(Tiling { spec: ctx.spec.clone(), frame: ctx.frame.clone(), tiles: Vec::new(), partial: true });
        }
    }
    (out, false)
}
