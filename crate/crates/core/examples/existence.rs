// Existence, largest v0 coefficient and dimension across small parameters.

use std::error::Error;

use tropical_bn::{max_d0, max_lingering, path_exists, BnParams};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    println!(" g  r  d  rho  exists  max_d0  dim");
    for g in 2..=5 {
        for r in 1..=2 {
            for d in 0..=2 * g as i64 - 2 {
                let p = BnParams::new(g, r, d)?;
                let exists = path_exists(&p)?;
                assert_eq!(exists, p.rho() >= 0);
                if exists {
                    let top = max_d0(&p)?;
                    let dim = max_lingering(&p)?;
                    println!(
                        "{g:>2} {r:>2} {d:>2} {:>4}  yes     {top:>6}  {dim:>3}",
                        p.rho()
                    );
                } else {
                    println!("{g:>2} {r:>2} {d:>2} {:>4}  no", p.rho());
                }
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
