//! Classical abscissas of a few series over λ = log n.

use dirichlet_core::frequency::Frequency;
use dirichlet_core::series::{CoefficientSource, DirichletSeries};
use dirichlet_core::spaces::{classical_abscissas, ClassicalParams};

fn main() -> dirichlet_core::Result<()> {
    let series = [
        ("zeta", CoefficientSource::ones()),
        ("eta", CoefficientSource::alternating()),
        ("n^-1/2", CoefficientSource::power(0.5)?),
    ];
    for (name, coeffs) in series {
        let d = DirichletSeries::new(Frequency::log_n(), coeffs, name);
        let c = classical_abscissas(&d, &ClassicalParams::default())?;
        let row: Vec<String> = c.all().iter().map(|(n, e)| format!("{n} = {}", e.value)).collect();
        println!("{name:>7}: {}", row.join(", "));
    }
    Ok(())
}
