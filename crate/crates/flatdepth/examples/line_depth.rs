use flatdepth::rat::rat_from_i64 as r;
use flatdepth::{regression_depth_line3, AffineFlatSpec, Error, Rat};

fn main() -> Result<(), Error> {
    let points: Vec<Vec<Rat>> = [[0, 1, 0], [1, 1, 1], [2, 5, 2], [3, 5, 3]]
        .iter()
        .map(|p| p.iter().copied().map(r).collect())
        .collect();
    let line = AffineFlatSpec::PointDirection {
        point: vec![r(0), r(0), r(0)],
        direction: vec![r(1), r(2), r(1)],
    };
    let report = regression_depth_line3(&points, &line)?;
    println!(
        "depth {} (strict {})",
        report.result.distance, report.result.strict_min
    );
    Ok(())
}
