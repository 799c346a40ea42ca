//! Defines a manufactured solution as a generic expression and obtains its
//! load `f = -Δu` by second-order forward differentiation.
//!
//! ```text
//! cargo run --release --example manufactured_problem
//! ```

use hive_vem::autodiff::{jet_at, Jet2, Real};
use hive_vem::problem::hex_sine;

fn field<T: Real>(x: T, y: T) -> T {
    (x * 3.0).sin() * (y * 2.0).cos() + x * x * y
}

fn main() {
    for &(x, y) in &[(0.0, 0.0), (0.25, -0.4), (-0.6, 0.1)] {
        let jet: Jet2 = jet_at(field, x, y);
        let exact = (x * 3.0_f64).sin() * (y * 2.0_f64).cos() * -13.0 + 2.0 * y;
        println!(
            "({x:5.2}, {y:5.2}): u = {:+.6}, grad = [{:+.6}, {:+.6}], laplacian = {:+.9} (closed form {:+.9})",
            jet.val,
            jet.dx,
            jet.dy,
            jet.laplacian(),
            exact
        );
    }
    let p = hex_sine();
    println!("{}: f(0.1, 0.2) = {:.9}", p.name, p.f(0.1, 0.2));
}
