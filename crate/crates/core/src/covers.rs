//! Fans (five ovoids partitioning the points) and rosettes (four ovoids
//! through a point partitioning the points not collinear with it), plus the
//! configuration of the 13 fans through a fixed ovoid.
//!
//! Ovoids are referred to by their index in the ovoid list.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::exact_cover::ExactCover;
use crate::hyperplanes::{triad_partitions, OvoidClass};
use crate::{Error, IncidenceStructure, PointSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Fan(pub [usize; 5]);

impl Fan {
    pub fn contains(&self, ovoid: usize) -> bool {
        self.0.contains(&ovoid)
    }

    pub fn shared(&self, other: &Fan) -> Vec<usize> {
        self.0
            .iter()
            .copied()
            .filter(|o| other.contains(*o))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Rosette {
    pub base: usize,
    pub members: [usize; 4],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RosetteKind {
    AllPlane,
    AllTripod,
    Mixed,
}

/// Exact covers of the point set by ovoids.
pub fn enumerate_fans(gq: &IncidenceStructure, ovoids: &[PointSet]) -> Vec<Fan> {
    let mut ec = ExactCover::new(gq.n_points());
    for o in ovoids {
        ec.add_option(&o.to_vec());
    }
    ec.solutions()
        .into_iter()
        .map(|sol| Fan(sol.try_into().expect("a fan has five ovoids")))
        .collect()
}

/// Rosettes at `x`: exact covers of the points not collinear with `x` by
/// ovoids through `x` with `x` removed.
pub fn enumerate_rosettes(gq: &IncidenceStructure, ovoids: &[PointSet], x: usize) -> Vec<Rosette> {
    let far: Vec<usize> = (gq.universe() - gq.perp(x)).to_vec();
    let through: Vec<usize> = (0..ovoids.len())
        .filter(|&o| ovoids[o].contains(x))
        .collect();
    let mut ec = ExactCover::new(far.len());
    for &o in &through {
        let items: Vec<usize> = (ovoids[o] - PointSet::singleton(x))
            .iter()
            .map(|p| {
                far.binary_search(&p)
                    .expect("ovoid points other than x are far from x")
            })
            .collect();
        ec.add_option(&items);
    }
    ec.solutions()
        .into_iter()
        .map(|sol| Rosette {
            base: x,
            members: sol
                .into_iter()
                .map(|i| through[i])
                .collect::<Vec<_>>()
                .try_into()
                .expect("a rosette has four ovoids"),
        })
        .collect()
}

pub fn rosette_kind(r: &Rosette, is_plane: &[bool]) -> RosetteKind {
    let planes = r.members.iter().filter(|&&o| is_plane[o]).count();
    match planes {
        4 => RosetteKind::AllPlane,
        0 => RosetteKind::AllTripod,
        _ => RosetteKind::Mixed,
    }
}

/// Member counts (plane ovoids, tri-tripods, uni-tripods).
pub fn fan_composition(fan: &Fan, classes: &[OvoidClass]) -> (usize, usize, usize) {
    let count = |c| fan.0.iter().filter(|&&o| classes[o] == c).count();
    (
        count(OvoidClass::Plane),
        count(OvoidClass::TriTripod),
        count(OvoidClass::UniTripod),
    )
}

/// The plane ovoid together with the four tripods formed by the centers of
/// its four triad partitions.
pub fn distinguished_fan(
    gq: &IncidenceStructure,
    ovoids: &[PointSet],
    plane_ovoid: usize,
    tripod_check: impl Fn(PointSet) -> bool,
) -> Result<Fan, Error> {
    let p = ovoids[plane_ovoid];
    let partitions = triad_partitions(gq, p);
    if partitions.len() != 4 {
        return Err(Error::Structure(format!(
            "plane ovoid {plane_ovoid} has {} triad partitions",
            partitions.len()
        )));
    }
    let mut members = vec![plane_ovoid];
    for part in partitions {
        let centers = part
            .iter()
            .fold(PointSet::empty(), |acc, &t| acc | gq.perp_of_set(t));
        let id = ovoids
            .iter()
            .position(|&o| o == centers)
            .ok_or(Error::NotAnOvoid(centers))?;
        if !tripod_check(centers) {
            return Err(Error::Structure(format!(
                "centers {centers:?} do not form a tripod"
            )));
        }
        members.push(id);
    }
    let union = members
        .iter()
        .fold(PointSet::empty(), |acc, &o| acc | ovoids[o]);
    let total: usize = members.iter().map(|&o| ovoids[o].len()).sum();
    if union != gq.universe() || total != gq.n_points() {
        return Err(Error::Structure(format!("{members:?} is not a fan")));
    }
    members.sort_unstable();
    Ok(Fan(members.try_into().unwrap()))
}

#[derive(Clone, Debug, Serialize)]
pub struct Partner {
    pub ovoid: usize,
    pub class: OvoidClass,
    /// Fans containing both the central ovoid and this one.
    pub multiplicity: usize,
}

/// A set of fans with the same intersection with the distinguished fan.
#[derive(Clone, Debug, Serialize)]
pub struct FanClass {
    /// Ovoids other than the centre shared with the distinguished fan.
    pub shared: Vec<usize>,
    pub shared_classes: Vec<OvoidClass>,
    pub fans: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigReport {
    pub ovoid: usize,
    pub class: OvoidClass,
    pub fans: Vec<usize>,
    /// Disjoint (plane, tri, uni) ovoid counts.
    pub disjoint_profile: (usize, usize, usize),
    pub partners: Vec<Partner>,
    pub multiplicity_sum: usize,
    /// Multiplicity -> number of partners.
    pub multiplicity_histogram: BTreeMap<usize, usize>,
    /// The unique fan sharing a further ovoid with every other fan here.
    pub distinguished: Option<usize>,
    pub classes: Vec<FanClass>,
    pub pattern: String,
}

pub fn fan_configuration(
    ovoid: usize,
    ovoids: &[PointSet],
    fans: &[Fan],
    classes: &[OvoidClass],
) -> ConfigReport {
    let center = ovoids[ovoid];
    let through: Vec<usize> = (0..fans.len())
        .filter(|&f| fans[f].contains(ovoid))
        .collect();

    let mut profile = (0, 0, 0);
    let mut partners = Vec::new();
    for (o, &set) in ovoids.iter().enumerate() {
        if !set.is_disjoint(center) {
            continue;
        }
        match classes[o] {
            OvoidClass::Plane => profile.0 += 1,
            OvoidClass::TriTripod => profile.1 += 1,
            OvoidClass::UniTripod => profile.2 += 1,
        }
        let multiplicity = through.iter().filter(|&&f| fans[f].contains(o)).count();
        partners.push(Partner {
            ovoid: o,
            class: classes[o],
            multiplicity,
        });
    }
    let multiplicity_sum = partners.iter().map(|p| p.multiplicity).sum();
    let mut multiplicity_histogram = BTreeMap::new();
    for p in &partners {
        *multiplicity_histogram.entry(p.multiplicity).or_insert(0) += 1;
    }

    let distinguished: Vec<usize> = through
        .iter()
        .copied()
        .filter(|&f| {
            through
                .iter()
                .all(|&g| g == f || fans[f].shared(&fans[g]).len() >= 2)
        })
        .collect();
    let distinguished = match distinguished.as_slice() {
        [one] => Some(*one),
        _ => None,
    };

    let mut fan_classes: Vec<FanClass> = Vec::new();
    if let Some(d) = distinguished {
        let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for &f in &through {
            if f == d {
                continue;
            }
            let shared: Vec<usize> = fans[f]
                .shared(&fans[d])
                .into_iter()
                .filter(|&o| o != ovoid)
                .collect();
            groups.entry(shared).or_default().push(f);
        }
        fan_classes = groups
            .into_iter()
            .map(|(shared, fans)| {
                let mut shared_classes: Vec<OvoidClass> =
                    shared.iter().map(|&o| classes[o]).collect();
                shared_classes.sort();
                FanClass {
                    shared,
                    shared_classes,
                    fans,
                }
            })
            .collect();
    }
    let pattern = render_pattern(&fan_classes, distinguished.is_some());

    ConfigReport {
        ovoid,
        class: classes[ovoid],
        fans: through,
        disjoint_profile: profile,
        partners,
        multiplicity_sum,
        multiplicity_histogram,
        distinguished,
        classes: fan_classes,
        pattern,
    }
}

/// Classes with the same kinds of shared ovoids are grouped; groups are
/// ordered by class count (descending) then shared-set size, and bracketed
/// `[..]`, `(..)`, `{..}` in that order. The distinguished fan is the final `1`.
fn render_pattern(classes: &[FanClass], with_distinguished: bool) -> String {
    let mut groups: BTreeMap<&[OvoidClass], Vec<usize>> = BTreeMap::new();
    for c in classes {
        groups
            .entry(&c.shared_classes)
            .or_default()
            .push(c.fans.len());
    }
    let mut groups: Vec<(&[OvoidClass], Vec<usize>)> = groups.into_iter().collect();
    groups.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then(a.0.len().cmp(&b.0.len())));
    const BRACKETS: [(char, char); 3] = [('[', ']'), ('(', ')'), ('{', '}')];
    let mut parts: Vec<String> = groups
        .iter()
        .enumerate()
        .map(|(i, (_, sizes))| {
            let (open, close) = BRACKETS[i % 3];
            let inner: Vec<String> = sizes.iter().map(usize::to_string).collect();
            format!("{open}{}{close}", inner.join("+"))
        })
        .collect();
    if with_distinguished {
        parts.push("1".to_string());
    }
    parts.join("+")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(shared: &[OvoidClass], n: usize) -> FanClass {
        FanClass {
            shared: (0..shared.len()).collect(),
            shared_classes: shared.to_vec(),
            fans: (0..n).collect(),
        }
    }

    #[test]
    fn pattern_rendering() {
        use OvoidClass::*;
        let spider = [
            class(&[TriTripod], 3),
            class(&[UniTripod], 3),
            class(&[UniTripod], 3),
            class(&[UniTripod], 3),
        ];
        assert_eq!(render_pattern(&spider, true), "[3+3+3]+(3)+1");
        let frog = [
            class(&[Plane], 3),
            class(&[TriTripod, UniTripod], 3),
            class(&[TriTripod, UniTripod], 3),
            class(&[UniTripod, UniTripod], 3),
        ];
        assert_eq!(render_pattern(&frog, true), "[3+3]+(3)+{3}+1");
        assert_eq!(render_pattern(&[], false), "");
    }

    #[test]
    fn fan_shared_members() {
        let a = Fan([0, 1, 2, 3, 4]);
        let b = Fan([0, 2, 5, 6, 7]);
        assert_eq!(a.shared(&b), vec![0, 2]);
        assert!(b.contains(7));
    }
}
