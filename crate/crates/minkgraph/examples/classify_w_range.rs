//! The trichotomy of entire stationary graphs in `R_1^4`, seen through
//! their W-functions, plus the near-area-preserving family in `R_1^5`.

use minkgraph::rep::{construct_ber3, make_canonical, Classification};
use minkgraph::Expr;

fn show(label: &str, data: &minkgraph::StationaryData) -> minkgraph::Result<()> {
    let class = data.classify();
    let (lo, hi) = data.w_range_on_grid(20.0, 401)?;
    println!("{label:10} {class:?}");
    println!("{:10} W over grid: [{lo:.6}, {hi:.6}], product {:.6}", "", lo * hi);
    Ok(())
}

fn main() -> minkgraph::Result<()> {
    // constant beta: affine graph, constant W
    let case_i = make_canonical(0.5, 1.5, &[], Expr::parse("1+2*i")?, 2)?;
    show("case i", &case_i)?;

    // c = -i: lightlike-direction graph, W identically 1
    let case_ii = make_canonical(0.0, 1.0, &[], Expr::parse("z")?, 2)?;
    show("case ii", &case_ii)?;
    if let Classification::CaseII { y0 } = case_ii.classify() {
        println!("{:10} lightlike direction y0 = {y0:?}", "");
    }

    // anything else: W oscillates over [r1, r2] with r1 r2 = 1
    let case_iii = make_canonical(1.0, 1.0, &[], Expr::parse("z")?, 2)?;
    show("case iii", &case_iii)?;

    // codimension 3: inf W * sup W can hit any C >= 1 with arbitrarily
    // small oscillation
    let near = construct_ber3(4.0, 0.1, 3)?;
    show("ber3", &near)?;
    Ok(())
}
