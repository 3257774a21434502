//! Standard tables: the vertex operator of a trivial algebra and solver outputs over catalog modules.

use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{solve_fusion_space, Axiom, Constraint, FusionSpace, FusionWindow, IntertwinerTable, JacobiWindow, ModeKey, VertexTable};
use crate::logseries::CoeffVector;
use crate::mobius::catalog::{jordan_block, sl2_irrep, trivial};
use crate::mobius::Module;
use crate::scalars::{ExactScalar, Exponent};

/// `Y_W(𝟏, x) = id_W` as a table of type `(W; V W)` with `V` one-dimensional.
pub fn vertex_operator_table(w: Arc<Module>) -> IntertwinerTable {
    let v = Arc::new(trivial("V"));
    let mut t = IntertwinerTable::new(v, w.clone(), w.clone());
    for j in 0..w.dim() {
        t.set(ModeKey::new(0, j, Exponent::int(-1), 0), CoeffVector::basis(j));
    }
    t
}

/// `Σ_b (b+1)·basis_b`, a solution involving every basis element.
pub fn generic(fs: &FusionSpace) -> Option<IntertwinerTable> {
    let mut it = fs.basis.iter().enumerate();
    let (_, first) = it.next()?;
    let mut out = first.clone();
    for (b, t) in it {
        out = out.add_table(&t.scale(&ExactScalar::int(b as i64 + 1)));
    }
    Some(out)
}

fn solve(w1: Module, w2: Module, w3: Module, axioms: &[Axiom], max_log: u32) -> FusionSpace {
    let win = FusionWindow::derived(&w1, &w2, &w3, max_log);
    let cons: Vec<Constraint> = axioms.iter().map(|a| Constraint::Axiom(*a)).collect();
    solve_fusion_space(Arc::new(w1), Arc::new(w2), Arc::new(w3), &win, &cons).expect("rational systems have monomial pivots")
}

fn frac(a: i64, b: i64) -> Exponent {
    Exponent::frac(a, b).expect("lattice exponent")
}

/// Solver tables over Jordan-block modules of dimension `≤ 4` under the `L(0)`-derivative axioms,
/// with maximal log powers `0` to `3` among them.
pub fn jordan_tables() -> Vec<IntertwinerTable> {
    let specs: [(Module, Module, Module, u32); 5] = [
        (trivial("V"), jordan_block("J", frac(1, 2), 2), jordan_block("J", frac(1, 2), 2), 1),
        (trivial("V"), jordan_block("K", frac(1, 3), 3), jordan_block("K", frac(1, 3), 3), 2),
        (jordan_block("A", frac(1, 4), 2), jordan_block("B", frac(1, 2), 2), jordan_block("C", frac(1, 3), 2), 3),
        (jordan_block("A", frac(1, 4), 2), trivial("V"), jordan_block("A", frac(1, 4), 2), 2),
        (jordan_block("P", frac(1, 6), 1), jordan_block("Q", frac(1, 2), 1), jordan_block("R", frac(1, 3), 1), 0),
    ];
    specs.into_iter().filter_map(|(a, b, c, k)| generic(&solve(a, b, c, &Axiom::L0_TYPE, k))).collect()
}

/// Solver tables satisfying the full axioms over irreducible `sl(2)`-modules.
pub fn sl2_tables() -> Vec<IntertwinerTable> {
    let specs: [(Module, Module, Module); 4] = [
        (sl2_irrep("S2", 2), trivial("V"), sl2_irrep("S2", 2)),
        (trivial("V"), sl2_irrep("S3", 3), sl2_irrep("S3", 3)),
        (sl2_irrep("S2", 2), sl2_irrep("S2", 2), sl2_irrep("S3", 3)),
        (sl2_irrep("S2", 2), sl2_irrep("S2", 2), trivial("V")),
    ];
    specs.into_iter().filter_map(|(a, b, c)| generic(&solve(a, b, c, &Axiom::FULL, 1))).collect()
}

/// A vertex table with the vacuum (index 0) and one vector `a` (index 1) whose only mode `a_{−1}`
/// acts by the nilpotent part of `L(0)` on each module.
pub fn nilpotent_vertex_table(mods: [&Module; 3]) -> VertexTable {
    let mut vt = VertexTable::vacuum([mods[0].dim(), mods[1].dim(), mods[2].dim()]);
    let mut grown = VertexTable::new(2);
    for (w, m) in mods.iter().enumerate() {
        for ((v, n), a) in vt.entries(w) {
            grown.set(w, *v, *n, a.clone());
        }
        grown.set(w, 1, -1, m.nilpotent());
    }
    vt = grown;
    vt
}

/// Solutions of the `L(0)`-derivative axioms and the windowed Jacobi identity for
/// `nilpotent_vertex_table`, with `W₁ = W₃` a Jordan pair and `W₂` trivial.
pub fn jacobi_instance() -> (IntertwinerTable, VertexTable) {
    let j = jordan_block("J", frac(1, 2), 2);
    let v = trivial("V");
    let vt = nilpotent_vertex_table([&j, &v, &j]);
    let win = FusionWindow::derived(&j, &v, &j, 1);
    let mut cons: Vec<Constraint> = Axiom::L0_TYPE.iter().map(|a| Constraint::Axiom(*a)).collect();
    cons.push(Constraint::Jacobi(vt.clone(), JacobiWindow::default()));
    let fs = solve_fusion_space(Arc::new(j.clone()), Arc::new(v), Arc::new(j), &win, &cons).expect("solvable");
    (generic(&fs).expect("nonzero solution"), vt)
}
