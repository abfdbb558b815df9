//! CPLEX LP text export of the F2 model.
//!
//! Naming contract:
//!
//! * `y_i_k` for vertex variables,
//! * `z_i_j_k_l` for the edge variable mapping G1 edge `(i, j)` onto G2 edge
//!   endpoints `(k, l)` in that order (an undirected edge pair yields both
//!   `z_i_j_k_l` and `z_i_j_l_k`),
//! * row names as in [`crate::formulations::f2`].
//!
//! LP files have no objective constant. The objective written is
//! `C'(y, z) - gamma`; `gamma` goes into a `\ gamma = ...` comment when
//! requested. Numbers use Rust's shortest round-trip decimal form.

use std::fmt::Write;

use super::f2::{IlpModelF2, Var};

fn term(out: &mut String, coef: f64, name: &str) {
    let sign = if coef.is_sign_negative() && coef != 0.0 { '-' } else { '+' };
    let _ = writeln!(out, "   {sign} {} {name}", coef.abs());
}

pub fn export_lp(model: &IlpModelF2, with_gamma: bool) -> String {
    let mut out = String::new();
    let counts = model.counts();
    out.push_str("\\ F2 substitution model for graph edit distance\n");
    let _ = writeln!(
        out,
        "\\ n1 = {}, n2 = {}, directed = {}, variables = {}, constraints = {}",
        model.n1(),
        model.n2(),
        model.is_directed(),
        counts.variables(),
        counts.constraints()
    );
    if with_gamma {
        let _ = writeln!(out, "\\ gamma = {}", model.gamma());
        out.push_str("\\ edit distance = gamma + optimal objective\n");
    }

    out.push_str("Minimize\n obj:\n");
    for i in 0..model.n1() {
        for k in 0..model.n2() {
            term(&mut out, model.y_cost(i, k), &format!("y_{i}_{k}"));
        }
    }
    for z in 0..model.z_vars().len() {
        term(&mut out, model.z_cost(z), &model.var_name(Var::Z(z)));
    }

    out.push_str("Subject To\n");
    for row in model.constraints() {
        let _ = writeln!(out, " {}:", row.name);
        for &(v, c) in &row.terms {
            term(&mut out, c, &model.var_name(v));
        }
        let _ = writeln!(out, "   <= {}", row.rhs);
    }

    out.push_str("Binaries\n");
    for i in 0..model.n1() {
        for k in 0..model.n2() {
            let _ = writeln!(out, " y_{i}_{k}");
        }
    }
    for z in 0..model.z_vars().len() {
        let _ = writeln!(out, " {}", model.var_name(Var::Z(z)));
    }
    out.push_str("End\n");
    out
}
