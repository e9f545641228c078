//! MICMAC classification of factors by driving and dependence power.
//!
//! A power is strong when it is strictly greater than its cutoff; a point
//! lying exactly on a cutoff counts as weak on that axis.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::ism::PowerProfile;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Cluster {
    /// Weak driving, weak dependence.
    Autonomous,
    /// Weak driving, strong dependence.
    Dependent,
    /// Strong driving, strong dependence.
    Linkage,
    /// Strong driving, weak dependence.
    Independent,
}

impl Cluster {
    pub const ALL: [Cluster; 4] = [
        Cluster::Autonomous,
        Cluster::Dependent,
        Cluster::Linkage,
        Cluster::Independent,
    ];

    pub fn from_strength(strong_driving: bool, strong_dependence: bool) -> Cluster {
        match (strong_driving, strong_dependence) {
            (false, false) => Cluster::Autonomous,
            (false, true) => Cluster::Dependent,
            (true, true) => Cluster::Linkage,
            (true, false) => Cluster::Independent,
        }
    }

    fn strength(self) -> (bool, bool) {
        match self {
            Cluster::Autonomous => (false, false),
            Cluster::Dependent => (false, true),
            Cluster::Linkage => (true, true),
            Cluster::Independent => (true, false),
        }
    }
}

impl fmt::Display for Cluster {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MicmacThresholds {
    driving_cutoff: f64,
    dependence_cutoff: f64,
}

impl MicmacThresholds {
    pub fn new(driving_cutoff: f64, dependence_cutoff: f64) -> Result<Self> {
        for (name, v) in [("driving", driving_cutoff), ("dependence", dependence_cutoff)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Parameter(format!(
                    "{name} cutoff must be a positive number, got {v}"
                )));
            }
        }
        Ok(MicmacThresholds {
            driving_cutoff,
            dependence_cutoff,
        })
    }

    /// Midpoint cutoffs `n / 2` on both axes. Degenerate (zero) for `n = 0`.
    pub fn auto(n: usize) -> Self {
        let half = n as f64 / 2.0;
        MicmacThresholds {
            driving_cutoff: half,
            dependence_cutoff: half,
        }
    }

    /// Per-axis overrides; a missing axis falls back to `n / 2`.
    pub fn resolve(n: usize, driving: Option<f64>, dependence: Option<f64>) -> Result<Self> {
        let auto = MicmacThresholds::auto(n);
        match (driving, dependence) {
            (None, None) => Ok(auto),
            _ => MicmacThresholds::new(
                driving.unwrap_or(auto.driving_cutoff),
                dependence.unwrap_or(auto.dependence_cutoff),
            ),
        }
    }

    pub fn driving_cutoff(&self) -> f64 {
        self.driving_cutoff
    }

    pub fn dependence_cutoff(&self) -> f64 {
        self.dependence_cutoff
    }

    pub fn cluster_for(&self, driving: f64, dependence: f64) -> Cluster {
        Cluster::from_strength(driving > self.driving_cutoff, dependence > self.dependence_cutoff)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MicmacPoint {
    pub id: String,
    pub driving: usize,
    pub dependence: usize,
    pub cluster: Cluster,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MicmacClassification {
    pub factor_count: usize,
    pub thresholds: MicmacThresholds,
    pub points: Vec<MicmacPoint>,
}

impl MicmacClassification {
    pub fn cluster_of(&self, id: &str) -> Option<Cluster> {
        self.points.iter().find(|p| p.id == id).map(|p| p.cluster)
    }

    pub fn members(&self, cluster: Cluster) -> Vec<&str> {
        self.points
            .iter()
            .filter(|p| p.cluster == cluster)
            .map(|p| p.id.as_str())
            .collect()
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            boundary_rule: &'static str,
            #[serde(flatten)]
            inner: &'a MicmacClassification,
        }
        let mut out = serde_json::to_string_pretty(&Doc {
            boundary_rule: BOUNDARY_RULE,
            inner: self,
        })
        .expect("classification serializes");
        out.push('\n');
        out
    }
}

pub const BOUNDARY_RULE: &str = "strong means strictly greater than the cutoff; points on a cutoff are weak";

/// Places every factor in one of the four clusters. `None` selects the
/// `n / 2` cutoffs.
pub fn classify(profile: &PowerProfile, thresholds: Option<MicmacThresholds>) -> Result<MicmacClassification> {
    let n = profile.len();
    let thresholds = thresholds.unwrap_or_else(|| MicmacThresholds::auto(n));
    let mut points = Vec::with_capacity(n);
    for (k, id) in profile.factor_ids.iter().enumerate() {
        let (driving, dependence) = (profile.driving[k], profile.dependence[k]);
        if !(1..=n).contains(&driving) || !(1..=n).contains(&dependence) {
            return Err(Error::Invalid(format!(
                "powers of `{id}` ({driving}, {dependence}) are outside 1..={n}"
            )));
        }
        points.push(MicmacPoint {
            id: id.clone(),
            driving,
            dependence,
            cluster: thresholds.cluster_for(driving as f64, dependence as f64),
        });
    }
    Ok(MicmacClassification {
        factor_count: n,
        thresholds,
        points,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Axis {
    pub label: &'static str,
    pub min: f64,
    pub max: f64,
    pub cutoff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Quadrant {
    pub cluster: Cluster,
    pub x_range: [f64; 2],
    pub y_range: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChartPoint {
    pub id: String,
    pub x: usize,
    pub y: usize,
    pub cluster: Cluster,
}

/// Quadrant chart: dependence on the x axis, driving on the y axis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChartData {
    pub x_axis: Axis,
    pub y_axis: Axis,
    pub quadrants: Vec<Quadrant>,
    pub points: Vec<ChartPoint>,
}

pub fn chart_data(c: &MicmacClassification) -> ChartData {
    let max = c.factor_count as f64;
    let (xc, yc) = (c.thresholds.dependence_cutoff, c.thresholds.driving_cutoff);
    let quadrants = Cluster::ALL
        .iter()
        .map(|&cluster| {
            let (strong_driving, strong_dependence) = cluster.strength();
            Quadrant {
                cluster,
                x_range: if strong_dependence { [xc, max] } else { [0.0, xc] },
                y_range: if strong_driving { [yc, max] } else { [0.0, yc] },
            }
        })
        .collect();
    ChartData {
        x_axis: Axis {
            label: "Dependence power",
            min: 0.0,
            max,
            cutoff: xc,
        },
        y_axis: Axis {
            label: "Driving power",
            min: 0.0,
            max,
            cutoff: yc,
        },
        quadrants,
        points: c
            .points
            .iter()
            .map(|p| ChartPoint {
                id: p.id.clone(),
                x: p.dependence,
                y: p.driving,
                cluster: p.cluster,
            })
            .collect(),
    }
}

fn escape_xml(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Static SVG scatter plot with cutoff lines and quadrant labels. Points
/// sharing a position are listed in one label.
pub fn render_svg(chart: &ChartData) -> String {
    const SIZE: f64 = 480.0;
    const PAD: f64 = 60.0;
    let span = chart.x_axis.max.max(1.0);
    let sx = |x: f64| PAD + x / span * SIZE;
    let sy = |y: f64| PAD + SIZE - y / span * SIZE;
    let total = SIZE + 2.0 * PAD;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total}" height="{total}" viewBox="0 0 {total} {total}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        out,
        r##"<rect x="{PAD}" y="{PAD}" width="{SIZE}" height="{SIZE}" fill="none" stroke="#000"/>"##
    );
    let (cx, cy) = (sx(chart.x_axis.cutoff), sy(chart.y_axis.cutoff));
    let _ = writeln!(
        out,
        r##"<line x1="{cx:.1}" y1="{PAD}" x2="{cx:.1}" y2="{:.1}" stroke="#888" stroke-dasharray="4 3"/>"##,
        PAD + SIZE
    );
    let _ = writeln!(
        out,
        r##"<line x1="{PAD}" y1="{cy:.1}" x2="{:.1}" y2="{cy:.1}" stroke="#888" stroke-dasharray="4 3"/>"##,
        PAD + SIZE
    );
    for q in &chart.quadrants {
        let x = (sx(q.x_range[0]) + sx(q.x_range[1])) / 2.0;
        let y = (sy(q.y_range[0]) + sy(q.y_range[1])) / 2.0;
        let _ = writeln!(
            out,
            r##"<text x="{x:.1}" y="{y:.1}" text-anchor="middle" fill="#bbb" font-size="16">{}</text>"##,
            q.cluster
        );
    }
    let ticks = chart.x_axis.max as usize;
    for t in 0..=ticks {
        let v = t as f64;
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{t}</text>"#,
            sx(v),
            PAD + SIZE + 16.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{t}</text>"#,
            PAD - 6.0,
            sy(v) + 4.0
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
        PAD + SIZE / 2.0,
        total - 12.0,
        chart.x_axis.label
    );
    let _ = writeln!(
        out,
        r#"<text x="16" y="{:.1}" text-anchor="middle" transform="rotate(-90 16 {:.1})">{}</text>"#,
        PAD + SIZE / 2.0,
        PAD + SIZE / 2.0,
        chart.y_axis.label
    );

    let mut grouped: BTreeMap<(usize, usize), Vec<&str>> = BTreeMap::new();
    for p in &chart.points {
        grouped.entry((p.x, p.y)).or_default().push(&p.id);
    }
    for ((x, y), ids) in grouped {
        let (px, py) = (sx(x as f64), sy(y as f64));
        let _ = writeln!(out, r##"<circle cx="{px:.1}" cy="{py:.1}" r="4" fill="#1f77b4"/>"##);
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}">{}</text>"#,
            px + 6.0,
            py - 6.0,
            escape_xml(&ids.join(", "))
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Published cluster membership, one cluster per factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterReference {
    labels: HashMap<String, Cluster>,
}

impl ClusterReference {
    pub fn new(assignments: impl IntoIterator<Item = (String, Cluster)>) -> Result<Self> {
        let mut labels = HashMap::new();
        for (id, cluster) in assignments {
            if let Some(prev) = labels.insert(id.clone(), cluster) {
                return Err(Error::Invalid(format!("`{id}` is listed in both {prev} and {cluster}")));
            }
        }
        Ok(ClusterReference { labels })
    }

    /// `{"Independent": ["P1", ...], "Dependent": [...], ...}`; clusters may
    /// be omitted.
    pub fn from_json(source: &str) -> Result<Self> {
        let raw: BTreeMap<Cluster, Vec<String>> = serde_json::from_str(source).map_err(|source| Error::Json {
            context: "cluster reference".into(),
            source,
        })?;
        ClusterReference::new(
            raw.into_iter()
                .flat_map(|(c, ids)| ids.into_iter().map(move |id| (id, c))),
        )
    }

    pub fn get(&self, id: &str) -> Option<Cluster> {
        self.labels.get(id).copied()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClusterCheck {
    pub id: String,
    pub computed: Cluster,
    pub reference: Cluster,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClusterDiff {
    pub entries: Vec<ClusterCheck>,
    pub agreement: usize,
    pub total: usize,
}

impl ClusterDiff {
    pub fn mismatches(&self) -> impl Iterator<Item = &ClusterCheck> {
        self.entries.iter().filter(|e| !e.matches)
    }
}

/// Per-factor agreement between a computed classification and a reference.
/// Both must cover exactly the same factors.
pub fn compare_clusters(computed: &MicmacClassification, reference: &ClusterReference) -> Result<ClusterDiff> {
    let computed_ids: HashSet<&str> = computed.points.iter().map(|p| p.id.as_str()).collect();
    let mut missing: Vec<&str> = computed_ids
        .iter()
        .copied()
        .filter(|id| reference.get(id).is_none())
        .collect();
    let mut extra: Vec<&str> = reference
        .labels
        .keys()
        .map(String::as_str)
        .filter(|id| !computed_ids.contains(id))
        .collect();
    if !missing.is_empty() || !extra.is_empty() {
        missing.sort_unstable_by(|a, b| crate::ids::natural_cmp(a, b));
        extra.sort_unstable_by(|a, b| crate::ids::natural_cmp(a, b));
        return Err(Error::Invalid(format!(
            "cluster reference does not match the classified factors (missing: [{}], unknown: [{}])",
            missing.join(", "),
            extra.join(", ")
        )));
    }
    let entries: Vec<ClusterCheck> = computed
        .points
        .iter()
        .map(|p| {
            let reference = reference.get(&p.id).expect("checked above");
            ClusterCheck {
                id: p.id.clone(),
                computed: p.cluster,
                reference,
                matches: p.cluster == reference,
            }
        })
        .collect();
    Ok(ClusterDiff {
        agreement: entries.iter().filter(|e| e.matches).count(),
        total: entries.len(),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn profile(points: &[(usize, usize)]) -> PowerProfile {
        let n = points.len();
        PowerProfile {
            factor_ids: (1..=n).map(|i| format!("F{i}")).collect(),
            driving: points.iter().map(|p| p.0).collect(),
            dependence: points.iter().map(|p| p.1).collect(),
            driving_rank: vec![1; n],
            dependence_rank: vec![1; n],
        }
    }

    #[test]
    fn maximal_point_is_linkage() {
        let c = classify(&profile(&[(4, 4), (1, 1), (1, 1), (1, 1)]), None).unwrap();
        assert_eq!(c.points[0].cluster, Cluster::Linkage);
        assert_eq!(c.points[1].cluster, Cluster::Autonomous);
    }

    #[test]
    fn minimal_point_is_autonomous() {
        let c = classify(&profile(&[(1, 1), (3, 3), (2, 2)]), None).unwrap();
        assert_eq!(c.points[0].cluster, Cluster::Autonomous);
    }

    #[test]
    fn boundary_counts_as_weak() {
        let t = MicmacThresholds::new(2.0, 2.0).unwrap();
        assert_eq!(t.cluster_for(2.0, 2.0), Cluster::Autonomous);
        assert_eq!(t.cluster_for(2.5, 2.0), Cluster::Independent);
    }

    #[test]
    fn non_positive_cutoffs_rejected() {
        assert!(matches!(MicmacThresholds::new(0.0, 1.0), Err(Error::Parameter(_))));
        assert!(MicmacThresholds::new(1.0, -2.0).is_err());
        assert!(MicmacThresholds::new(f64::NAN, 1.0).is_err());
        assert!(MicmacThresholds::resolve(4, Some(0.0), None).is_err());
        let half = MicmacThresholds::resolve(4, None, Some(3.0)).unwrap();
        assert_eq!((half.driving_cutoff(), half.dependence_cutoff()), (2.0, 3.0));
    }

    #[test]
    fn out_of_range_powers_rejected() {
        assert!(classify(&profile(&[(0, 1)]), None).is_err());
        assert!(classify(&profile(&[(1, 3), (1, 1)]), None).is_err());
    }

    #[test]
    fn empty_chart() {
        let c = classify(&profile(&[]), None).unwrap();
        let chart = chart_data(&c);
        assert!(chart.points.is_empty());
        assert_eq!((chart.x_axis.min, chart.x_axis.max), (0.0, 0.0));
        assert_eq!((chart.y_axis.min, chart.y_axis.max), (0.0, 0.0));
        assert!(render_svg(&chart).ends_with("</svg>\n"));
    }

    #[test]
    fn two_point_chart() {
        let c = classify(
            &profile(&[(2, 1), (1, 2)]),
            Some(MicmacThresholds::new(1.0, 1.0).unwrap()),
        )
        .unwrap();
        let chart = chart_data(&c);
        assert_eq!(chart.points[0].cluster, Cluster::Independent);
        assert_eq!(chart.points[1].cluster, Cluster::Dependent);
        assert_eq!((chart.points[0].x, chart.points[0].y), (1, 2));
        assert_eq!(chart.quadrants.len(), 4);
    }

    #[test]
    fn cluster_diff_counts() {
        let c = classify(&profile(&[(3, 1), (1, 3), (3, 3)]), None).unwrap();
        let same = ClusterReference::new(c.points.iter().map(|p| (p.id.clone(), p.cluster))).unwrap();
        let diff = compare_clusters(&c, &same).unwrap();
        assert_eq!((diff.agreement, diff.total), (3, 3));

        let flipped = ClusterReference::new(
            c.points
                .iter()
                .enumerate()
                .map(|(k, p)| (p.id.clone(), if k == 1 { Cluster::Autonomous } else { p.cluster })),
        )
        .unwrap();
        let diff = compare_clusters(&c, &flipped).unwrap();
        assert_eq!(diff.mismatches().map(|m| m.id.as_str()).collect::<Vec<_>>(), vec!["F2"]);

        let short = ClusterReference::new([("F1".to_string(), Cluster::Linkage)]).unwrap();
        assert!(compare_clusters(&c, &short).is_err());
    }

    #[test]
    fn reference_json() {
        let r = ClusterReference::from_json(r#"{"Linkage": ["A"], "Autonomous": ["B"]}"#).unwrap();
        assert_eq!(r.get("A"), Some(Cluster::Linkage));
        assert!(ClusterReference::from_json(r#"{"Linkage": ["A"], "Autonomous": ["A"]}"#).is_err());
        assert!(ClusterReference::from_json(r#"{"Central": ["A"]}"#).is_err());
    }

    proptest! {
        #[test]
        fn quadrants_partition_the_plane(d in 0.0f64..100.0, e in 0.0f64..100.0, dc in 0.01f64..50.0, ec in 0.01f64..50.0) {
            let t = MicmacThresholds::new(dc, ec).unwrap();
            let hits: Vec<Cluster> = Cluster::ALL
                .iter()
                .copied()
                .filter(|c| c.strength() == (d > dc, e > ec))
                .collect();
            prop_assert_eq!(hits.len(), 1);
            prop_assert_eq!(hits[0], t.cluster_for(d, e));
        }

        #[test]
        fn scaling_preserves_clusters(d in 1u32..50, e in 1u32..50, dc in 1u32..50, ec in 1u32..50, k in 1u32..20) {
            let base = MicmacThresholds::new(dc as f64, ec as f64).unwrap();
            let k = k as f64;
            let scaled = MicmacThresholds::new(dc as f64 * k, ec as f64 * k).unwrap();
            prop_assert_eq!(base.cluster_for(d as f64, e as f64), scaled.cluster_for(d as f64 * k, e as f64 * k));
        }

        #[test]
        fn classify_is_permutation_equivariant(points in prop::collection::vec((1usize..=8, 1usize..=8), 8), rot in 0usize..8) {
            let p = profile(&points);
            let c = classify(&p, None).unwrap();
            let mut rotated = p.clone();
            rotated.factor_ids.rotate_left(rot);
            rotated.driving.rotate_left(rot);
            rotated.dependence.rotate_left(rot);
            let r = classify(&rotated, None).unwrap();
            for point in &r.points {
                prop_assert_eq!(Some(point.cluster), c.cluster_of(&point.id));
            }
        }
    }
}
