//! Sample a canonical surface on a parameter grid and export it as CSV and
//! as a triangulated OBJ mesh.

use minkgraph::lab::{sample_grid, write_csv, write_obj};
use minkgraph::rep::make_canonical;
use minkgraph::Expr;

fn main() -> minkgraph::Result<()> {
    let data = make_canonical(1.0, 1.0, &[], Expr::parse("z")?, 2)?;
    let n = 17;
    let rows = sample_grid(&data, 2.0, n)?;
    println!("sampled {} points", rows.len());

    let dir = std::env::temp_dir();
    let csv_path = dir.join("minkgraph_surface.csv");
    let obj_path = dir.join("minkgraph_surface.obj");

    let mut csv = std::io::BufWriter::new(std::fs::File::create(&csv_path)?);
    write_csv(&mut csv, data.codim(), &rows)?;

    // project onto (x1, x2, f1) for the mesh
    let mut obj = std::io::BufWriter::new(std::fs::File::create(&obj_path)?);
    write_obj(&mut obj, data.codim(), &rows, n, [0, 1, 2])?;

    println!("wrote {}", csv_path.display());
    println!("wrote {}", obj_path.display());
    println!(
        "mesh: {} vertices, {} triangles",
        n * n,
        2 * (n - 1) * (n - 1)
    );
    Ok(())
}
