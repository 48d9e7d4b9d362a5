#![allow(dead_code)]

use ddseq::module::FPModule;
use ddseq::{FieldSpec, Polynomial, Ring};

pub fn polys(r: &Ring, s: &[&str]) -> Vec<Polynomial> {
    s.iter().map(|x| Polynomial::parse(r, x).unwrap()).collect()
}

pub fn ring(names: &[&str]) -> Ring {
    Ring::new(names, FieldSpec::Rational).unwrap()
}

pub fn quotient(names: &[&str], ideal: &[&str]) -> FPModule {
    let r = ring(names);
    FPModule::quotient_ring(&r, &polys(&r, ideal)).unwrap()
}

pub fn seq(m: &FPModule, s: &[&str]) -> Vec<Polynomial> {
    polys(m.ring(), s)
}

/// The ideal (X^2, XY, Y^2) of k[X,Y] as a module, with the parameters (X, Y^2).
pub fn square_of_maximal_ideal() -> (FPModule, Vec<Polynomial>) {
    let r = ring(&["X", "Y"]);
    let m = FPModule::ideal_as_module(&r, &polys(&r, &["X^2", "X*Y", "Y^2"])).unwrap();
    (m, polys(&r, &["X", "Y^2"]))
}

/// k[X_1..X_{d+1}] / (X_{d+1}^{d+1}, X_1 X_{d+1}^d, ..., X_d X_{d+1}) with (X_1, ..., X_d).
pub fn staircase(d: usize) -> (FPModule, Vec<Polynomial>) {
    let names: Vec<String> = (1..=d + 1).map(|i| format!("X{i}")).collect();
    let r = Ring::new(&names, FieldSpec::Rational).unwrap();
    let last = &names[d];
    let mut gens = vec![format!("{last}^{}", d + 1)];
    for i in 1..=d {
        gens.push(format!("X{i}*{last}^{}", d + 1 - i));
    }
    let gens: Vec<&str> = gens.iter().map(String::as_str).collect();
    let m = FPModule::quotient_ring(&r, &polys(&r, &gens)).unwrap();
    let x: Vec<&str> = names[..d].iter().map(String::as_str).collect();
    (m, polys(&r, &x))
}

/// k[x,y,z] with its variables.
pub fn polynomial_ring() -> (FPModule, Vec<Polynomial>) {
    let r = ring(&["x", "y", "z"]);
    (FPModule::free(&r, vec![0]), polys(&r, &["x", "y", "z"]))
}

/// k[x,y]/(x^2, y^3), of length 6.
pub fn artinian() -> FPModule {
    quotient(&["x", "y"], &["x^2", "y^3"])
}

/// k[x,y,z]/(xz, yz): a plane and a line, with a distinguished parameter
/// system.
pub fn plane_and_line() -> (FPModule, Vec<Polynomial>) {
    let m = quotient(&["x", "y", "z"], &["x*z", "y*z"]);
    let x = seq(&m, &["y + z", "x"]);
    (m, x)
}

/// k[x1..x4]/((x1,x2) ∩ (x3,x4)): two planes meeting at a point.
pub fn two_planes() -> (FPModule, Vec<Polynomial>) {
    let m = quotient(&["x1", "x2", "x3", "x4"], &["x1*x3", "x1*x4", "x2*x3", "x2*x4"]);
    let x = seq(&m, &["x1 + x3", "x2 + x4"]);
    (m, x)
}

/// k[x,y,z,w] / ((x,y) ∩ (w) ∩ (x^2,y^2,z^2,w^2)): layers of dimensions 0, 2, 3.
pub fn three_layers() -> FPModule {
    quotient(&["x", "y", "z", "w"], &["x^2*w", "x*w^2", "y^2*w", "y*w^2", "x*z^2*w", "y*z^2*w"])
}

/// The three-layer module with the distinguished system found by the greedy search.
pub fn three_layers_distinguished() -> (FPModule, Vec<Polynomial>) {
    let m = three_layers();
    let x = seq(&m, &["y^2 + 2*y*w + w^2", "z^2", "x^2"]);
    (m, x)
}

/// Modules paired with a system of parameters.
pub fn corpus() -> Vec<(&'static str, FPModule, Vec<Polynomial>)> {
    let (a, x) = square_of_maximal_ideal();
    let (b, y) = staircase(2);
    let (c, z) = plane_and_line();
    let (d, w) = two_planes();
    let (e, v) = polynomial_ring();
    let (f, u) = three_layers_distinguished();
    vec![
        ("square of the maximal ideal", a, x),
        ("staircase d=2", b, y),
        ("plane and line", c, z),
        ("two planes", d, w),
        ("polynomial ring", e, v),
        ("three layers", f, u),
    ]
}

/// k[x,y]/(x^2, xy^2): a line with an embedded point not killed by m.
pub fn embedded_point() -> FPModule {
    quotient(&["x", "y"], &["x^2", "x*y^2"])
}
