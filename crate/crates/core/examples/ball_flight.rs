//! Fly one topspin ball across the table with and without air, and print
//! the trajectory every 50 ms up to the first event.
//!
//! ```text
//! cargo run --release --example ball_flight
//! ```

use ttrl::physics::{simulate_traced, BallState, PhysicsParams, TableGeometry, Vec3};

fn main() -> Result<(), ttrl::Error> {
    let geometry = TableGeometry::default();
    let start = BallState::new(
        Vec3::new(2.9, 0.1, 0.35),
        Vec3::new(-5.5, -0.3, 1.6),
        Vec3::new(0.0, -60.0, 0.0),
    );

    for (label, params) in [("air", PhysicsParams::default()), ("vacuum", PhysicsParams::vacuum())] {
        let flight = simulate_traced(start, &geometry, &params, 1e-3, 3.0)?;
        println!("{label}");
        println!("  {:>6}  {:>7} {:>7} {:>7}  {:>7} {:>7} {:>7}", "t", "x", "y", "z", "vx", "vy", "vz");
        for s in flight.samples.iter().step_by(50) {
            print_state(s);
        }
        let end = flight.event.state_at_event;
        print_state(&end);
        println!("  ended by {} at t = {:.4} s", flight.event.kind, end.time);
    }
    Ok(())
}

fn print_state(s: &BallState) {
    let (p, v) = (s.position, s.velocity);
    println!(
        "  {:>6.3}  {:>7.3} {:>7.3} {:>7.3}  {:>7.3} {:>7.3} {:>7.3}",
        s.time, p.x, p.y, p.z, v.x, v.y, v.z
    );
}
