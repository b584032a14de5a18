//! The certificate suite: sixteen checks, each producing rows of the form
//! `label=value PASS|FAIL|INFO`. INFO rows report values that carry no
//! expectation and never fail a check.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::covers::{
    distinguished_fan, enumerate_rosettes, fan_composition, fan_configuration, rosette_kind, Fan,
    RosetteKind,
};
use crate::exact_cover::ExactCover;
use crate::hyperplanes::{
    derive_tripod, enumerate_hyperplane_sets, enumerate_ovoids, triad_partitions,
    tricentric_triads_in, OvoidClass,
};
use crate::subquads::{
    frame_search_copies, orbit_copies, partition_witness, symmetric_difference_census,
};
use crate::symmetry::{
    enumerate_group, orbit_sizes, orbits, preserves_lines, stabilizer_generators,
};
use crate::veldkamp::{
    comp, nonlinearity_witnesses, pg34_subspace_check, tricentric_triad_stats,
    unicentric_vlines_at, CoreType,
};
use crate::{Error, GramForm, Model, PointSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub criterion: &'static str,
    pub label: String,
    pub value: String,
    pub status: Status,
    pub claim: String,
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<4} {}={} {}  {}",
            self.criterion, self.label, self.value, self.status, self.claim
        )
    }
}

pub struct Check {
    pub id: &'static str,
    pub name: &'static str,
    pub summary: &'static str,
    run: fn(&Model, usize, &mut Sheet) -> Result<(), Error>,
}

pub struct Sheet {
    criterion: &'static str,
    rows: Vec<Row>,
}

impl Sheet {
    fn push(&mut self, label: &str, value: impl fmt::Display, status: Status, claim: &str) {
        self.rows.push(Row {
            criterion: self.criterion,
            label: label.to_string(),
            value: value.to_string(),
            status,
            claim: claim.to_string(),
        });
    }

    fn check(&mut self, label: &str, value: impl fmt::Display, pass: bool, claim: &str) {
        let status = if pass { Status::Pass } else { Status::Fail };
        self.push(label, value, status, claim);
    }

    fn info(&mut self, label: &str, value: impl fmt::Display, claim: &str) {
        self.push(label, value, Status::Info, claim);
    }
}

pub static CHECKS: [Check; 16] = [
    Check {
        id: "A1",
        name: "gq",
        summary: "GQ(4,2) from H(3,4)",
        run: gq_build,
    },
    Check {
        id: "A2",
        name: "perps",
        summary: "perps and tangent planes",
        run: perps,
    },
    Check {
        id: "A3",
        name: "triads",
        summary: "tricentric triads and hyperbolic lines",
        run: triads,
    },
    Check {
        id: "A4",
        name: "hyperplanes",
        summary: "245 geometric hyperplanes",
        run: hyperplanes,
    },
    Check {
        id: "A5",
        name: "ovoids",
        summary: "plane ovoids and tripods",
        run: ovoids,
    },
    Check {
        id: "A6",
        name: "copies",
        summary: "GQ(2,2) copies",
        run: copies,
    },
    Check {
        id: "A7",
        name: "fans",
        summary: "fans of ovoids",
        run: fans,
    },
    Check {
        id: "A8",
        name: "rosettes",
        summary: "rosettes of ovoids",
        run: rosettes,
    },
    Check {
        id: "A9",
        name: "subspace",
        summary: "PG(3,4) inside the Veldkamp space",
        run: subspace,
    },
    Check {
        id: "A10",
        name: "vlines",
        summary: "V-line census",
        run: vlines,
    },
    Check {
        id: "A11",
        name: "nonlinearity",
        summary: "non-linearity witnesses",
        run: nonlinearity,
    },
    Check {
        id: "A12",
        name: "plane-ovoids",
        summary: "triad partitions and distinguished fans",
        run: plane_ovoids,
    },
    Check {
        id: "A13",
        name: "fan-configs",
        summary: "the 13 fans through an ovoid",
        run: fan_configs,
    },
    Check {
        id: "A14",
        name: "orbits",
        summary: "automorphism group orbits",
        run: group_orbits,
    },
    Check {
        id: "A15",
        name: "symdiff",
        summary: "symmetric differences and partition witness",
        run: symdiff,
    },
    Check {
        id: "A16",
        name: "cross-form",
        summary: "invariance under the diagonal form",
        run: cross_form,
    },
];

/// Checks selected by name, criterion id (case-insensitive) or `all`.
pub fn resolve(name: &str) -> Option<Vec<&'static Check>> {
    if name == "all" {
        return Some(CHECKS.iter().collect());
    }
    CHECKS
        .iter()
        .find(|c| c.name == name || c.id.eq_ignore_ascii_case(name))
        .map(|c| vec![c])
}

pub fn run_check(check: &Check, model: &Model, copy: usize) -> Vec<Row> {
    let mut sheet = Sheet {
        criterion: check.id,
        rows: Vec::new(),
    };
    if let Err(e) = (check.run)(model, copy, &mut sheet) {
        sheet.check(check.name, format!("error: {e}"), false, check.summary);
    }
    sheet.rows
}

pub fn run(model: &Model, checks: &[&Check], copy: usize) -> Vec<Row> {
    checks
        .iter()
        .flat_map(|c| run_check(c, model, copy))
        .collect()
}

pub fn all_pass(rows: &[Row]) -> bool {
    rows.iter().all(|r| r.status != Status::Fail)
}

fn set_str<T: fmt::Display>(s: &BTreeSet<T>) -> String {
    format!("{{{}}}", s.iter().join(","))
}

fn ratio(good: usize, total: usize) -> String {
    format!("{good}/{total}")
}

fn spread_count(m: &Model) -> usize {
    let gq = m.gq();
    let mut ec = ExactCover::new(gq.n_points());
    for l in gq.lines() {
        ec.add_option(&l.to_vec());
    }
    ec.count()
}

fn gq_build(m: &Model, _: usize, s: &mut Sheet) -> Result<(), Error> {
    let gq = m.gq();
    s.check(
        "points",
        gq.n_points(),
        gq.n_points() == 45,
        "isotropic points of H(3,4)",
    );
    s.check(
        "lines",
        gq.lines().len(),
        gq.lines().len() == 27,
        "generators of H(3,4)",
    );
    let per_line: BTreeSet<usize> = gq.lines().iter().map(|l| l.len()).collect();
    s.check(
        "points-per-line",
        set_str(&per_line),
        per_line == BTreeSet::from([5]),
        "s + 1 = 5",
    );
    let per_point: BTreeSet<usize> = (0..gq.n_points())
        .map(|p| gq.lines_through(p).count())
        .collect();
    s.check(
        "lines-per-point",
        set_str(&per_point),
        per_point == BTreeSet::from([3]),
        "t + 1 = 3",
    );
    let valid = gq.validate_gq(4, 2);
    let value = match &valid {
        Ok(()) => "valid".to_string(),
        Err(v) => v.to_string(),
    };
    s.check(
        "gq(4,2)",
        value,
        valid.is_ok(),
        "quadrangle axioms with s = 4, t = 2",
    );
    let spreads = spread_count(m);
    s.check(
        "spreads",
        spreads,
        spreads == 0,
        "no set of lines partitions the points",
    );
    Ok(())
}

fn perps(m: &Model, _: usize, s: &mut Sheet) -> Result<(), Error> {
    let gq = m.gq();
    let sizes: BTreeSet<usize> = (0..gq.n_points()).map(|p| gq.perp(p).len()).collect();
    s.check(
        "perp-size",
        set_str(&sizes),
        sizes == BTreeSet::from([13]),
        "1 + s + st = 13",
    );
    let planes: BTreeSet<usize> = (0..gq.n_points())
        .map(|p| m.surface.tangent_plane(p).id)
        .collect();
    let matched = (0..gq.n_points())
        .filter(|&p| m.surface.plane_section(m.surface.tangent_plane(p).id) == gq.perp(p))
        .count();
    s.check(
        "perps=tangent-planes",
        ratio(matched, gq.n_points()),
        matched == 45 && planes.len() == 45,
        "each perp is the section of the polar plane of its center",
    );
    Ok(())
}

fn hyperbolic_lines(m: &Model) -> Result<BTreeSet<PointSet>, Error> {
    let gq = m.gq();
    let mut out = BTreeSet::new();
    for (x, y) in (0..gq.n_points()).tuple_combinations() {
        if !gq.collinear(x, y) {
            out.insert(gq.hyperbolic_line(x, y)?);
        }
    }
    Ok(out)
}

fn triads(m: &Model, _: usize, s: &mut Sheet) -> Result<(), Error> {
    let gq = m.gq();
    let census = gq.triad_census();
    s.check(
        "tricentric-triads",
        census.tricentric,
        census.tricentric == 240,
        "triads with three centers",
    );
    let through: BTreeSet<usize> = census.tricentric_through.iter().copied().collect();
    s.check(
        "tricentric-through-point",
        set_str(&through),
        through == BTreeSet::from([16]),
        "tricentric triads on each point",
    );
    let hyperbolic = hyperbolic_lines(m)?;
    let sizes: BTreeSet<usize> = hyperbolic.iter().map(|h| h.len()).collect();
    let tricentric: BTreeSet<PointSet> = gq.tricentric_triads().into_iter().collect();
    s.check(
        "hyperbolic-lines",
        format!("{} of sizes {}", hyperbolic.len(), set_str(&sizes)),
        sizes == BTreeSet::from([3]) && hyperbolic == tricentric,
        "hyperbolic lines are exactly the tricentric triads",
    );
    s.info(
        "unicentric-triads",
        census.unicentric,
        "triads with one center",
    );
    s.info("acentric-triads", census.acentric, "triads with no center");
    Ok(())
}

fn hyperplanes(m: &Model, _: usize, s: &mut Sheet) -> Result<(), Error> {
    let gq = m.gq();
    let dfs: BTreeSet<PointSet> = enumerate_hyperplane_sets(gq).into_iter().collect();
    s.check(
        "hyperplanes",
        dfs.len(),
        dfs.len() == 245,
        "line-by-line search",
    );
    let ovoids = enumerate_ovoids(gq);
    let union: BTreeSet<PointSet> = (0..gq.n_points())
        .map(|p| gq.perp(p))
        .chain(ovoids.iter().copied())
        .collect();
    s.check(
        "perps+ovoids",
        format!("{}+{}", gq.n_points(), ovoids.len()),
        union == dfs && ovoids.len() == 200,
        "search result equals perps plus exact-cover ovoids",
    );
    let subquads = dfs
        .iter()
        .filter(|&&h| gq.induced(h).is_ok_and(|g| g.validate_gq(4, 1).is_ok()))
        .count();
    s.check(
        "gq(4,1)-hyperplanes",
        subquads,
        subquads == 0,
        "no hyperplane is a GQ(4,1)",
    );
    Ok(())
}

fn derived_tripods(m: &Model) -> Result<BTreeSet<PointSet>, Error> {
    let gq = m.gq();
    let mut out = BTreeSet::new();
    for o in m.catalog.plane_ovoid_ids() {
        let p = m.ovoids()[o];
        for (x, y) in p.iter().tuple_combinations() {
            out.insert(derive_tripod(gq, p, x, y)?);
        }
    }
    Ok(out)
}

fn ovoids(m: &Model, _: usize, s: &mut Sheet) -> Result<(), Error> {
    let gq = m.gq();
    let cat = &m.catalog;
    let (planes, tripods) = (cat.plane_ovoid_ids(), cat.tripod_ids());
    s.check(
        "plane-ovoids",
        planes.len(),
        planes.len() == 40,
        "ovoids spanning a plane",
    );
    s.check(
        "tripods",
        tripods.len(),
        tripods.len() == 160,
        "ovoids spanning PG(3,4)",
    );
    let rank_ok = planes
        .iter()
        .all(|&o| m.surface.span_rank(m.ovoids()[o]) == 3)
        && tripods
            .iter()
            .all(|&o| m.surface.span_rank(m.ovoids()[o]) == 4);
    s.check(
        "span-ranks",
        "3 and 4",
        rank_ok,
        "plane ovoids rank 3, tripods rank 4",
    );
    let sections: BTreeSet<PointSet> = m
        .surface
        .secant_planes()
        .into_iter()
        .map(|pl| m.surface.plane_section(pl))
        .collect();
    let plane_sets: BTreeSet<PointSet> = planes.iter().map(|&o| m.ovoids()[o]).collect();
    s.check(
        "plane-ovoids=secant-sections",
        sections.len(),
        sections == plane_sets,
        "plane ovoids are the non-tangent plane sections",
    );
    let unique = tripods
        .iter()
        .filter(|&&o| triad_partitions(gq, m.ovoids()[o]).len() == 1)
        .count();
    s.check(
        "unique-decompositions",
        ratio(unique, tripods.len()),
        unique == tripods.len(),
        "each tripod is one union of three tricentric triads",
    );
    let derived = derived_tripods(m)?;
    let tripod_sets: BTreeSet<PointSet> = tripods.iter().map(|&o| m.ovoids()[o]).collect();
    s.check(
        "derived-tripods",
        derived.len(),
        derived == tripod_sets,
        "(P minus {x,y}^⊥⊥) plus {x,y}^⊥ yields every tripod",
    );
    Ok(())
}

fn class_counts(classes: &[OvoidClass]) -> (usize, usize, usize) {
    let count = |c| classes.iter().filter(|&&x| x == c).count();
    (
        count(OvoidClass::Plane),
        count(OvoidClass::TriTripod),
        count(OvoidClass::UniTripod),
    )
}

fn copies(m: &Model, copy: usize, s: &mut Sheet) -> Result<(), Error> {
    let copies = m.copies()?;
    s.check(
        "copies",
        copies.len(),
        copies.len() == 36,
        "GQ(2,2) subquadrangles",
    );
    let by_orbit = orbit_copies(&m.group().generators, copies[0]).len();
    s.check(
        "copies-by-orbit",
        by_orbit,
        by_orbit == 36,
        "group orbit of the reference copy",
    );
    let by_frames = frame_search_copies(&m.surface).len();
    s.check(
        "copies-by-frames",
        by_frames,
        by_frames == 36,
        "Baer subgeometries from frames",
    );
    let gq = m.gq();
    let meets = copies
        .iter()
        .cartesian_product(m.ovoids())
        .filter(|&(&q, &o)| gq.is_triad(q & o))
        .count();
    let total = copies.len() * m.ovoids().len();
    s.check(
        "ovoid-copy-triads",
        ratio(meets, total),
        meets == total,
        "every ovoid meets every copy in a triad",
    );
    let classes = m.ovoid_classes(copy)?;
    let (p, t, u) = class_counts(&classes);
    s.check(
        "tri-tripods",
        t,
        t == 40,
        "tripods sharing a tricentric triad with the copy",
    );
    s.check(
        "uni-tripods",
        u,
        u == 120,
        "tripods sharing a unicentric triad with the copy",
    );
    s.check(
        "plane-on-tricentric",
        ratio(p, 40),
        p == 40,
        "plane ovoids share a tricentric triad",
    );
    let uniform = (0..copies.len())
        .filter(|&c| {
            m.ovoid_classes(c)
                .is_ok_and(|cl| class_counts(&cl) == (40, 40, 120))
        })
        .count();
    s.check(
        "split-all-copies",
        ratio(uniform, copies.len()),
        uniform == copies.len(),
        "40/40/120 for every copy",
    );
    Ok(())
}

fn fans(m: &Model, copy: usize, s: &mut Sheet) -> Result<(), Error> {
    let fans = m.fans();
    s.check(
        "fans",
        fans.len(),
        fans.len() == 520,
        "partitions of the points into ovoids",
    );
    let is_plane = m.is_plane();
    let shaped = fans
        .iter()
        .filter(|f| f.0.iter().filter(|&&o| is_plane[o]).count() == 1)
        .count();
    s.check(
        "plane+4-tripods",
        ratio(shaped, fans.len()),
        shaped == fans.len(),
        "one plane ovoid and four tripods",
    );
    let classes = m.ovoid_classes(copy)?;
    let rel = fans
        .iter()
        .filter(|f| fan_composition(f, &classes) == (1, 1, 3))
        .count();
    s.check(
        "fans-(1,1,3)",
        ratio(rel, fans.len()),
        rel == fans.len(),
        "plane, tri-tripod, three uni-tripods",
    );
    let n_copies = m.copies()?.len();
    let uniform = (0..n_copies)
        .filter(|&c| {
            m.ovoid_classes(c)
                .is_ok_and(|cl| fans.iter().all(|f| fan_composition(f, &cl) == (1, 1, 3)))
        })
        .count();
    s.check(
        "fans-(1,1,3)-all-copies",
        ratio(uniform, n_copies),
        uniform == n_copies,
        "for every copy",
    );
    let per_ovoid: BTreeSet<usize> = (0..m.ovoids().len())
        .map(|o| fans.iter().filter(|f| f.contains(o)).count())
        .collect();
    s.check(
        "fans-per-ovoid",
        set_str(&per_ovoid),
        per_ovoid == BTreeSet::from([13]),
        "520 x 5 / 200",
    );
    let tri_incidences: usize = (0..m.ovoids().len())
        .filter(|&o| classes[o] == OvoidClass::TriTripod)
        .map(|o| fans.iter().filter(|f| f.contains(o)).count())
        .sum();
    s.check(
        "tri-tripod-incidences",
        tri_incidences,
        tri_incidences == 520,
        "40 tri-tripods x 13 fans",
    );
    Ok(())
}

fn rosette_profile(m: &Model) -> BTreeSet<(usize, usize, usize)> {
    let is_plane = m.is_plane();
    (0..m.gq().n_points())
        .map(|x| {
            let rs = enumerate_rosettes(m.gq(), m.ovoids(), x);
            let kind = |k| {
                rs.iter()
                    .filter(|r| rosette_kind(r, &is_plane) == k)
                    .count()
            };
            (
                rs.len(),
                kind(RosetteKind::AllPlane),
                kind(RosetteKind::AllTripod),
            )
        })
        .collect()
}

fn rosettes(m: &Model, _: usize, s: &mut Sheet) -> Result<(), Error> {
    let profile = rosette_profile(m);
    let totals: BTreeSet<usize> = profile.iter().map(|p| p.0).collect();
    let planes: BTreeSet<usize> = profile.iter().map(|p| p.1).collect();
    let tripods: BTreeSet<usize> = profile.iter().map(|p| p.2).collect();
    s.check(
        "rosettes-per-point",
        set_str(&totals),
        totals == BTreeSet::from([26]),
        "rosettes on each point",
    );
    s.check(
        "all-plane",
        set_str(&planes),
        planes == BTreeSet::from([2]),
        "rosettes of four plane ovoids",
    );
    s.check(
        "all-tripod",
        set_str(&tripods),
        tripods == BTreeSet::from([24]),
        "rosettes of four tripods",
    );
    Ok(())
}

fn subspace(m: &Model, _: usize, s: &mut Sheet) -> Result<(), Error> {
    let r = pg34_subspace_check(&m.surface, &m.catalog, m.census());
    s.check(
        "v-points",
        format!("{}={}+{}", r.v_points, r.perps, r.plane_ovoids),
        (r.v_points, r.perps, r.plane_ovoids) == (85, 45, 40),
        "perps and plane ovoids",
    );
    s.check(
        "subspace-vlines",
        ratio(r.pencils_in_census, r.pencils),
        r.pencils == 357 && r.pencils_in_census == 357,
        "plane pencils, each a census V-line",
    );
    let ty = |k: &str| r.types.get(k).copied().unwrap_or(0);
    let types = (ty("5p/0o/0t"), ty("3p/2o/0t"), ty("1p/4o/0t"));
    s.check(
        "pencil-types",
        format!("{}/{}/{}", types.0, types.1, types.2),
        types == (27, 240, 90) && r.types.len() == 3,
        "5 perps / 3 perps + 2 plane ovoids / perp + 4 plane ovoids",
    );
    s.check(
        "linear-space",
        ratio(r.pairs_on_one_pencil, r.point_pairs),
        r.passes(),
        r.first_failure
            .as_deref()
            .unwrap_or("two V-points on exactly one pencil"),
    );
    Ok(())
}

fn vlines(m: &Model, _: usize, s: &mut Sheet) -> Result<(), Error> {
    let gq = m.gq();
    let census = m.census();
    let uni = census.count(3, comp(1, 0, 2), CoreType::UnicentricTriad);
    s.check(
        "perp+2-tripods",
        uni,
        uni == 2160,
        "size 3 on a unicentric triad, 45 x 48",
    );
    let size2 = census.count(2, comp(0, 1, 1), CoreType::SixSet);
    s.check(
        "plane+tripod-size-2",
        size2,
        size2 >= 1,
        "size 2, meeting in six points",
    );
    let lines = census.count(5, comp(5, 0, 0), CoreType::FullLine);
    s.check(
        "perps-on-a-line",
        lines,
        lines == 27,
        "five perps on a line",
    );
    let triads: BTreeSet<usize> = (0..gq.n_points())
        .map(|x| gq.unicentric_triads_at(x).len())
        .collect();
    s.check(
        "unicentric-per-perp",
        set_str(&triads),
        triads == BTreeSet::from([48]),
        "unicentric triads centred at each point",
    );
    let per_perp: BTreeSet<usize> = (0..gq.n_points())
        .map(|x| unicentric_vlines_at(census, x))
        .collect();
    s.check(
        "size-3-per-perp",
        set_str(&per_perp),
        per_perp == BTreeSet::from([48]),
        "size-3 V-lines through each perp",
    );
    s.info("vlines", census.len(), "distinct V-lines");
    let (ovoids_on_triad, perp_line) = tricentric_triad_stats(gq, &m.catalog);
    s.info(
        "ovoids-per-tricentric-triad",
        set_str(&ovoids_on_triad),
        "ovoids through a tricentric triad",
    );
    s.info(
        "perp-pair-vline-size",
        set_str(&perp_line),
        "V-line of two perps on a tricentric triad",
    );
    Ok(())
}

fn nonlinearity(m: &Model, _: usize, s: &mut Sheet) -> Result<(), Error> {
    let r = nonlinearity_witnesses(m.gq(), &m.catalog, m.census(), &m.fan_hyperplanes());
    let shared = r
        .shared_triple
        .as_ref()
        .map_or("none".to_string(), |w| format!("{:?}", w.shared));
    s.check(
        "shared-triple",
        shared,
        r.shared_triple.is_some(),
        "two V-lines with three common V-points",
    );
    s.check(
        "rosette-vlines",
        format!("{} (need {})", r.rosettes.best, r.rosettes.required),
        r.rosettes.passes(),
        "V-lines through a perp and a tripod, each perp + rosette",
    );
    s.check(
        "fan-vlines",
        format!("{} (need {})", r.fans.best, r.fans.required),
        r.fans.passes(),
        "V-lines through a plane ovoid and a tripod, each a fan",
    );
    s.info(
        "fans-in-census",
        ratio(r.fan_discrepancy.fans_in_census, r.fan_discrepancy.fans),
        "fans that are V-lines",
    );
    s.check(
        "not-partial-linear-space",
        r.not_partial_linear_space,
        r.not_partial_linear_space,
        "two V-lines share two V-points",
    );
    Ok(())
}

fn tripod_check(m: &Model) -> impl Fn(PointSet) -> bool + '_ {
    |set| {
        m.catalog
            .ovoid_id(set)
            .is_some_and(|o| m.catalog.ovoid(o).is_tripod())
    }
}

fn plane_ovoids(m: &Model, _: usize, s: &mut Sheet) -> Result<(), Error> {
    let gq = m.gq();
    let fans = m.fans();
    let planes = m.catalog.plane_ovoid_ids();
    let triads: BTreeSet<usize> = planes
        .iter()
        .map(|&o| tricentric_triads_in(gq, m.ovoids()[o]).len())
        .collect();
    s.check(
        "tricentric-triads",
        set_str(&triads),
        triads == BTreeSet::from([12]),
        "per plane ovoid",
    );
    let parts: BTreeSet<usize> = planes
        .iter()
        .map(|&o| triad_partitions(gq, m.ovoids()[o]).len())
        .collect();
    s.check(
        "triad-partitions",
        set_str(&parts),
        parts == BTreeSet::from([4]),
        "per plane ovoid",
    );
    let mut distinguished = BTreeSet::new();
    let mut sharing = 0;
    for &o in &planes {
        let fan = distinguished_fan(gq, m.ovoids(), o, tripod_check(m))?;
        if !fans.contains(&fan) {
            return Err(Error::Structure(format!(
                "{fan:?} is not an enumerated fan"
            )));
        }
        let others_ok = fans
            .iter()
            .filter(|f| f.contains(o) && **f != fan)
            .all(|f| f.shared(&fan).len() >= 2);
        sharing += usize::from(others_ok);
        distinguished.insert(fan);
    }
    s.check(
        "distinguished-fans",
        distinguished.len(),
        distinguished.len() == 40,
        "one per plane ovoid, pairwise distinct",
    );
    s.check(
        "distinguished-sharing",
        ratio(sharing, planes.len()),
        sharing == planes.len(),
        "shares a further ovoid with each other fan through P",
    );
    Ok(())
}

struct Expected {
    profile: (usize, usize, usize),
    /// Partner classes at multiplicity 4 and 7, sorted.
    four: Vec<OvoidClass>,
    seven: Vec<OvoidClass>,
    pattern: &'static str,
}

fn expected(class: OvoidClass) -> Expected {
    use OvoidClass::*;
    match class {
        Plane => Expected {
            profile: (0, 10, 30),
            four: vec![TriTripod, UniTripod, UniTripod, UniTripod],
            seven: vec![],
            pattern: "[3+3+3]+(3)+1",
        },
        TriTripod => Expected {
            profile: (10, 0, 21),
            four: vec![Plane],
            seven: vec![UniTripod, UniTripod, UniTripod],
            pattern: "[3+3+3]+(3)+1",
        },
        UniTripod => Expected {
            profile: (10, 7, 14),
            four: vec![Plane],
            seven: vec![TriTripod, UniTripod, UniTripod],
            pattern: "[3+3]+(3)+{3}+1",
        },
    }
}

#[derive(Default)]
struct ConfigTally {
    ovoids: usize,
    profile: usize,
    multiplicities: usize,
    sum: usize,
    pattern: usize,
    patterns: BTreeSet<String>,
}

fn tally_configs(
    m: &Model,
    classes: &[OvoidClass],
    fans: &[Fan],
) -> BTreeMap<OvoidClass, ConfigTally> {
    let mut out: BTreeMap<OvoidClass, ConfigTally> = BTreeMap::new();
    for o in 0..m.ovoids().len() {
        let r = fan_configuration(o, m.ovoids(), fans, classes);
        let e = expected(r.class);
        let at = |k: usize| -> Vec<OvoidClass> {
            r.partners
                .iter()
                .filter(|p| p.multiplicity == k)
                .map(|p| p.class)
                .sorted()
                .collect()
        };
        let only_known = r
            .multiplicity_histogram
            .keys()
            .all(|k| [1, 4, 7].contains(k));
        let t = out.entry(r.class).or_default();
        t.ovoids += 1;
        t.profile += usize::from(r.disjoint_profile == e.profile);
        t.multiplicities += usize::from(only_known && at(4) == e.four && at(7) == e.seven);
        t.sum += usize::from(r.multiplicity_sum == 52);
        t.pattern += usize::from(r.pattern == e.pattern);
        t.patterns.insert(r.pattern);
    }
    out
}

fn tally_ok(tallies: &BTreeMap<OvoidClass, ConfigTally>) -> bool {
    tallies.len() == 3
        && tallies.values().all(|t| {
            t.profile == t.ovoids
                && t.multiplicities == t.ovoids
                && t.sum == t.ovoids
                && t.pattern == t.ovoids
        })
}

fn fan_configs(m: &Model, copy: usize, s: &mut Sheet) -> Result<(), Error> {
    let fans = m.fans();
    let classes = m.ovoid_classes(copy)?;
    let tallies = tally_configs(m, &classes, fans);
    for class in [
        OvoidClass::Plane,
        OvoidClass::TriTripod,
        OvoidClass::UniTripod,
    ] {
        let name = match class {
            OvoidClass::Plane => "plane",
            OvoidClass::TriTripod => "tri",
            OvoidClass::UniTripod => "uni",
        };
        let e = expected(class);
        let Some(t) = tallies.get(&class) else {
            s.check(
                &format!("{name}-ovoids"),
                0,
                false,
                "no ovoids of this class",
            );
            continue;
        };
        s.check(
            &format!("{name}-profile"),
            format!("{:?} {}", e.profile, ratio(t.profile, t.ovoids)),
            t.profile == t.ovoids,
            "disjoint plane/tri/uni ovoids",
        );
        s.check(
            &format!("{name}-multiplicities"),
            format!(
                "4x{} 7x{} {}",
                e.four.len(),
                e.seven.len(),
                ratio(t.multiplicities, t.ovoids)
            ),
            t.multiplicities == t.ovoids,
            "fans shared with each disjoint ovoid",
        );
        s.check(
            &format!("{name}-multiplicity-sum"),
            format!("52 {}", ratio(t.sum, t.ovoids)),
            t.sum == t.ovoids,
            "13 fans x 4 partners",
        );
        s.check(
            &format!("{name}-pattern"),
            set_str(&t.patterns),
            t.pattern == t.ovoids,
            e.pattern,
        );
    }

    let planes = m.catalog.plane_ovoid_ids();
    let matching = planes
        .iter()
        .filter(|&&o| {
            let r = fan_configuration(o, m.ovoids(), fans, &classes);
            let four: BTreeSet<usize> = r
                .partners
                .iter()
                .filter(|p| p.multiplicity == 4)
                .map(|p| p.ovoid)
                .collect();
            let via_centers = distinguished_fan(m.gq(), m.ovoids(), o, tripod_check(m));
            r.distinguished.is_some_and(|d| {
                let fan = fans[d];
                via_centers.is_ok_and(|c| c == fan)
                    && fan
                        .0
                        .iter()
                        .filter(|&&x| x != o)
                        .copied()
                        .collect::<BTreeSet<_>>()
                        == four
            })
        })
        .count();
    s.check(
        "distinguished=multiplicity-4",
        ratio(matching, planes.len()),
        matching == planes.len(),
        "the distinguished fan holds the four multiplicity-4 partners",
    );

    let n_copies = m.copies()?.len();
    let uniform = (0..n_copies)
        .filter(|&c| {
            m.ovoid_classes(c)
                .is_ok_and(|cl| tally_ok(&tally_configs(m, &cl, fans)))
        })
        .count();
    s.check(
        "all-copies",
        ratio(uniform, n_copies),
        uniform == n_copies,
        "profiles hold for every copy",
    );
    Ok(())
}

fn group_orbits(m: &Model, copy: usize, s: &mut Sheet) -> Result<(), Error> {
    let gq = m.gq();
    let g = m.group();
    let gens = &g.generators;
    s.info("automorphism-order", g.order, "2 x 25920 expected");
    let preserve = gens.iter().all(|p| preserves_lines(gq, p));
    let products = gens
        .iter()
        .cartesian_product(gens)
        .all(|(a, b)| preserves_lines(gq, &a.then(b)) && preserves_lines(gq, &a.inverse()));
    s.check(
        "generators-preserve-lines",
        gens.len(),
        preserve && products,
        "generators, products and inverses",
    );
    let transitive = g.point_orbits(gq.n_points()).len() == 1;
    s.check(
        "point-transitive",
        transitive,
        transitive,
        "one orbit on points",
    );

    let ov = orbits(gens, m.ovoids(), |p, &o| p.apply_set(o));
    let is_plane = m.is_plane();
    let homogeneous = ov
        .iter()
        .all(|orb| orb.iter().all(|&o| is_plane[o] == is_plane[orb[0]]));
    let sizes = orbit_sizes(&ov);
    s.check(
        "ovoid-orbits",
        format!("{sizes:?}"),
        sizes == [160, 40] && homogeneous,
        "tripods and plane ovoids",
    );

    let fans = m.fans();
    let act_fan = |p: &crate::symmetry::Permutation, f: &Fan| -> Fan {
        let mut img: Vec<usize> =
            f.0.iter()
                .map(|&o| {
                    m.catalog
                        .ovoid_id(p.apply_set(m.ovoids()[o]))
                        .expect("ovoids map to ovoids")
                })
                .collect();
        img.sort_unstable();
        Fan(img.try_into().unwrap())
    };
    let fo = orbits(gens, fans, act_fan);
    let fan_sizes = orbit_sizes(&fo);
    s.check(
        "fan-orbits",
        format!("{fan_sizes:?}"),
        fan_sizes == [480, 40],
        "two fan orbits",
    );

    let copies = m.copies()?;
    let co = orbit_sizes(&orbits(gens, copies, |p, &q| p.apply_set(q)));
    s.check(
        "copy-orbits",
        format!("{co:?}"),
        co == [36],
        "one orbit of copies",
    );

    let q = m.copy(copy)?;
    let stab = stabilizer_generators(gens, q);
    let classes = m.ovoid_classes(copy)?;
    let tripods = m.catalog.tripod_ids();
    let tripod_sets: Vec<PointSet> = tripods.iter().map(|&o| m.ovoids()[o]).collect();
    let so = orbits(&stab, &tripod_sets, |p, &o| p.apply_set(o));
    let so_sizes = orbit_sizes(&so);
    let matches_split = so.iter().all(|orb| {
        let c = classes[tripods[orb[0]]];
        orb.iter().all(|&i| classes[tripods[i]] == c)
            && (orb.len() == 40) == (c == OvoidClass::TriTripod)
    });
    s.check(
        "stabilizer-tripod-orbits",
        format!("{so_sizes:?}"),
        so_sizes == [120, 40] && matches_split,
        "orbits are the uni- and tri-tripods",
    );
    let stab_order = enumerate_group(&stab).len();
    s.info(
        "stabilizer-order",
        stab_order,
        "setwise stabilizer of the copy",
    );
    let planes = m.catalog.plane_ovoid_ids();
    let plane_sets: Vec<PointSet> = planes.iter().map(|&o| m.ovoids()[o]).collect();
    let po = orbit_sizes(&orbits(&stab, &plane_sets, |p, &o| p.apply_set(o)));
    s.info(
        "stabilizer-plane-orbits",
        format!("{po:?}"),
        "plane ovoids under the stabilizer",
    );

    let distinguished: BTreeSet<Fan> = planes
        .iter()
        .filter_map(|&o| distinguished_fan(gq, m.ovoids(), o, tripod_check(m)).ok())
        .collect();
    let small: BTreeSet<Fan> = fo
        .iter()
        .find(|orb| orb.len() == 40)
        .map(|orb| orb.iter().map(|&i| fans[i]).collect())
        .unwrap_or_default();
    s.info(
        "fan-40-orbit=distinguished",
        small == distinguished,
        "the small fan orbit",
    );
    Ok(())
}

fn symdiff(m: &Model, copy: usize, s: &mut Sheet) -> Result<(), Error> {
    let gq = m.gq();
    let classes = m.ovoid_classes(copy)?;
    let census = symmetric_difference_census(gq, m.ovoids(), &classes);
    let show =
        |p: Option<(usize, usize)>| p.map_or("none".to_string(), |(a, b)| format!("({a},{b})"));
    s.check(
        "plane-pair",
        show(census.example_plane_pair),
        census.example_plane_pair.is_some(),
        "plane ovoids on a tricentric triad, difference = two dual grids",
    );
    s.check(
        "tri-pair",
        show(census.example_tri_pair),
        census.example_tri_pair.is_some(),
        "pair with a tri-tripod, difference = two dual grids",
    );
    for (key, total) in &census.pairs {
        let ok = census.passing.get(key).copied().unwrap_or(0);
        s.info(
            &format!("split-{key}"),
            ratio(ok, *total),
            "pairs splitting into two dual grids",
        );
    }
    let report = partition_witness(gq, m.copies()?);
    s.check(
        "partition-witness",
        report.witness.is_some(),
        report.witness.is_some(),
        "three grids and three dual grids partition the points",
    );
    s.info(
        "anchored-partitions",
        report.anchored_partitions,
        "partitions found",
    );
    s.info(
        "full-pairing",
        report.full_pairing_exists,
        "every dual grid pairs with every grid",
    );
    s.info(
        "perfect-matching",
        report.perfect_matching_exists,
        "dual grids pair with grids one-to-one",
    );
    Ok(())
}

/// Isomorphism-invariant quantities of a model, by name.
pub fn invariants(m: &Model) -> Result<Vec<(&'static str, String)>, Error> {
    let gq = m.gq();
    let mut out = Vec::new();
    out.push((
        "points/lines",
        format!("{}/{}", gq.n_points(), gq.lines().len()),
    ));
    out.push(("gq(4,2)", gq.validate_gq(4, 2).is_ok().to_string()));
    out.push(("spreads", spread_count(m).to_string()));
    let triads = gq.triad_census();
    let through: BTreeSet<usize> = triads.tricentric_through.iter().copied().collect();
    out.push((
        "triads",
        format!(
            "{}/{}/{} {}",
            triads.tricentric,
            triads.unicentric,
            triads.acentric,
            set_str(&through)
        ),
    ));
    let tricentric: BTreeSet<PointSet> = gq.tricentric_triads().into_iter().collect();
    out.push((
        "hyperbolic=tricentric",
        (hyperbolic_lines(m)? == tricentric).to_string(),
    ));
    out.push((
        "hyperplanes",
        format!(
            "{}={}+{}",
            m.catalog.len(),
            m.catalog.n_perps(),
            m.ovoids().len()
        ),
    ));
    let planes = m.catalog.plane_ovoid_ids();
    let tripods = m.catalog.tripod_ids();
    out.push((
        "ovoid-shapes",
        format!("{}+{}", planes.len(), tripods.len()),
    ));
    let unique = tripods
        .iter()
        .filter(|&&o| triad_partitions(gq, m.ovoids()[o]).len() == 1)
        .count();
    out.push(("unique-decompositions", unique.to_string()));
    out.push(("derived-tripods", derived_tripods(m)?.len().to_string()));
    let fans = m.fans();
    let per_ovoid: BTreeSet<usize> = (0..m.ovoids().len())
        .map(|o| fans.iter().filter(|f| f.contains(o)).count())
        .collect();
    out.push(("fans", format!("{} {}", fans.len(), set_str(&per_ovoid))));
    let classes = m.ovoid_classes(0)?;
    let rel: BTreeSet<(usize, usize, usize)> =
        fans.iter().map(|f| fan_composition(f, &classes)).collect();
    out.push(("fan-compositions", format!("{rel:?}")));
    out.push(("rosettes", format!("{:?}", rosette_profile(m))));
    let r = pg34_subspace_check(&m.surface, &m.catalog, m.census());
    out.push((
        "subspace",
        format!(
            "{} {} {:?} {}",
            r.v_points,
            r.pencils_in_census,
            r.types,
            r.passes()
        ),
    ));
    let census = m.census();
    out.push((
        "vline-census",
        format!(
            "{} {}/{}/{}",
            census.len(),
            census.count(3, comp(1, 0, 2), CoreType::UnicentricTriad),
            census.count(2, comp(0, 1, 1), CoreType::SixSet),
            census.count(5, comp(5, 0, 0), CoreType::FullLine)
        ),
    ));
    let per_perp: BTreeSet<usize> = (0..gq.n_points())
        .map(|x| gq.unicentric_triads_at(x).len())
        .collect();
    out.push(("unicentric-per-perp", set_str(&per_perp)));
    Ok(out)
}

fn cross_form(m: &Model, _: usize, s: &mut Sheet) -> Result<(), Error> {
    let other_form = match m.form() {
        GramForm::SymplecticJ => GramForm::Diagonal,
        GramForm::Diagonal => GramForm::SymplecticJ,
    };
    let other = Model::build(other_form)?;
    let (a, b) = (invariants(m)?, invariants(&other)?);
    for ((name, x), (_, y)) in a.iter().zip(&b) {
        s.check(
            &format!("cross-form.{name}"),
            if x == y {
                x.clone()
            } else {
                format!("{x} vs {y}")
            },
            x == y,
            "same under both Gram matrices",
        );
    }
    Ok(())
}
