#[allow(dead_code)]
mod genericity_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/genericity.rs"
    ));
}

#[test]
fn genericity_example_runs() {
    genericity_example::run_example().expect("genericity example should run");
}

#[allow(dead_code)]
mod reduce_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/reduce.rs"));
}

#[test]
fn reduce_example_runs() {
    reduce_example::run_example().expect("reduce example should run");
}

#[allow(dead_code)]
mod rank_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/rank.rs"));
}

#[test]
fn rank_example_runs() {
    rank_example::run_example().expect("rank example should run");
}

#[allow(dead_code)]
mod enumerate_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/enumerate.rs"
    ));
}

#[test]
fn enumerate_example_runs() {
    enumerate_example::run_example().expect("enumerate example should run");
}

#[allow(dead_code)]
mod existence_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/existence.rs"
    ));
}

#[test]
fn existence_example_runs() {
    existence_example::run_example().expect("existence example should run");
}

#[allow(dead_code)]
mod game_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/game.rs"));
}

#[test]
fn game_example_runs() {
    game_example::run_example().expect("game example should run");
}

#[allow(dead_code)]
mod riemann_roch_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/riemann_roch.rs"
    ));
}

#[test]
fn riemann_roch_example_runs() {
    riemann_roch_example::run_example().expect("riemann_roch example should run");
}
