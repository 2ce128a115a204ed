use hlbc::alcove::{schwer_evaluate, EnumOptions};
use hlbc::formula::{
    builtin_weights, check_hhl, identity_suite, tableau_evaluate, verify_compression, Instance,
    VerifyOptions,
};

#[test]
fn tableau_matches_alcove_walks_on_builtins() {
    for weight in builtin_weights() {
        let inst = Instance::new(&weight).unwrap();
        let walk = schwer_evaluate(inst.chain(), EnumOptions::default()).unwrap();
        let tab = tableau_evaluate(&inst).unwrap();
        assert_eq!(walk, tab, "{weight}");
    }
}

#[test]
fn fibers_compress_on_builtins() {
    for weight in builtin_weights() {
        let inst = Instance::new(&weight).unwrap();
        let opts = VerifyOptions {
            check_levels: true,
            ..Default::default()
        };
        let report = verify_compression(&inst, opts).unwrap();
        let bad: Vec<_> = report
            .fibers
            .iter()
            .filter(|f| !f.matches)
            .take(3)
            .collect();
        assert!(
            report.passed(),
            "{weight}: weights {:?} levels {:?} unexpected {:?} unreached {:?} fibers {bad:?}",
            report.weight_failures,
            report.level_failures,
            report.unexpected_fillings,
            report.unreached_fillings
        );
        eprintln!(
            "{weight}: {} fillings, {} pairs, factor {:.2}",
            report.fillings, report.pairs, report.factor
        );
    }
}

#[test]
fn identities_hold_up_to_rank_three() {
    for check in identity_suite(3, 2000, 7).unwrap() {
        assert!(check.passed(), "{check:?}");
        eprintln!(
            "{}: {} cases in {:.2}s",
            check.name, check.cases, check.seconds
        );
    }
}

#[test]
fn inversion_statistics_agree() {
    for weight in builtin_weights() {
        let inst = Instance::new(&weight).unwrap();
        let check = check_hhl(&inst).unwrap();
        assert!(check.passed(), "{weight}: {check:?}");
        eprintln!("{weight}: {} hhl cases", check.cases);
    }
}
