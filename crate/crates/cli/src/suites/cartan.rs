//! Exact checks on the Cartan generators over ℚ.

use coble_core::exterior::Variance;
use coble_core::field::Q;
use coble_core::theta::{cartan_basis, dualize, e7_bracket, fano_report, fano_triples, shared_pairs};

use super::Options;
use crate::certificate::Certificate;

pub(super) fn run(opts: &Options) -> Vec<Certificate> {
    let h = cartan_basis::<Q>();

    let mut commuting = Certificate::new("cartan.commuting", opts.params_exact());
    for i in 0..7 {
        for j in i + 1..7 {
            let ok = e7_bracket(&h[i], &h[j]).is_ok_and(|m| m.is_zero());
            commuting.check(format!("[h{}, h{}] = 0", i + 1, j + 1), ok, "");
        }
    }

    let mut self_dual = Certificate::new("cartan.self-dual", opts.params_exact());
    for (i, hi) in h.iter().enumerate() {
        let d = dualize(hi).relabel_variance(Variance::Vector);
        let detail = if d == *hi {
            String::new()
        } else if d == hi.scale(&-Q::new(1, 1)) {
            "the dual is the negative".to_string()
        } else {
            "the dual differs".to_string()
        };
        self_dual.check(format!("dualize(h{}) = h{}", i + 1, i + 1), d == *hi, detail);
    }

    let mut fano = Certificate::new("cartan.fano", opts.params_exact());
    let report = fano_report();
    fano.check("non-complementary quadruples share at least two indices", report.pairs_share_two, "");
    fano.check("every index pair lies in exactly three quadruples", report.pair_multiplicity_three, "");
    fano.check("listed triples share four disjoint pairs", report.triples_share_four_disjoint, "");
    fano.check("listed triples meet pairwise in one label", report.triples_meet_once, "");
    let mut found = Vec::new();
    for a in 1..=7 {
        for b in a + 1..=7 {
            for c in b + 1..=7 {
                if shared_pairs(&[a, b, c]).len() == 4 {
                    found.push([a, b, c]);
                }
            }
        }
    }
    fano.check("triples with four shared pairs are exactly the listed ones", found == fano_triples(), format!("{found:?}"));
    let pairs = shared_pairs(&[1, 2, 4]);
    fano.check("h1, h2, h4 share (13), (24), (57), (68)", pairs == [(1, 3), (2, 4), (5, 7), (6, 8)], format!("{pairs:?}"));

    vec![commuting.finish(), self_dual.finish(), fano.finish()]
}
