//! Hyperparameter-search bookkeeping: grid enumeration and best-by-mean
//! selection over fold means. No training happens here; the harness only
//! plans combinations and picks the winner from externally supplied
//! scores.

use std::collections::BTreeMap;

/// One hyperparameter combination.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct GridPoint {
    pub params: BTreeMap<String, String>,
}

/// Cartesian product of the axes, in lexicographic axis order.
pub fn enumerate_grid(axes: &[(&str, Vec<String>)]) -> Vec<GridPoint> {
    let mut points = vec![GridPoint {
        params: BTreeMap::new(),
    }];
    for (name, values) in axes {
        let mut next = Vec::with_capacity(points.len() * values.len());
        for point in &points {
            for value in values {
                let mut params = point.params.clone();
                params.insert(name.to_string(), value.clone());
                next.push(GridPoint { params });
            }
        }
        points = next;
    }
    points
}

/// Pick the combination with the highest mean over its fold means.
/// Ties go to the earlier grid point, so selection is deterministic.
pub fn select_best(results: &[(GridPoint, Vec<f64>)]) -> Option<(GridPoint, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (idx, (_, fold_means)) in results.iter().enumerate() {
        if fold_means.is_empty() {
            continue;
        }
        let mean = fold_means.iter().sum::<f64>() / fold_means.len() as f64;
        if best.map(|(_, b)| mean > b).unwrap_or(true) {
            best = Some((idx, mean));
        }
    }
    best.map(|(idx, mean)| (results[idx].0.clone(), mean))
}
