use addend_core::record::RealizationRecord;
use addend_core::{
    addendization_set, check_realization, find_realizations, realize, LengthSet, SearchSpace,
    Verdict,
};

#[test]
fn realize_verify_serialize_and_search_agree() {
    for target in ["4", "2,5", "3,7", "2,4,6", "2,5,8", "3,5,7"] {
        let target: LengthSet = target.parse().unwrap();
        let r = realize(&target).unwrap();
        let report = check_realization(&r, Some(r.construction.expected_factorization_count())).unwrap();
        assert_eq!(report.verdict, Verdict::Pass, "{target}: {:?}", report.details);

        let json = serde_json::to_string(&RealizationRecord::from_report(&report)).unwrap();
        let back: RealizationRecord = serde_json::from_str(&json).unwrap();
        let rebuilt = back.into_realization().unwrap();
        assert_eq!(addendization_set(&rebuilt.semigroup, rebuilt.element).unwrap(), target);
    }
}

#[test]
fn search_hits_are_realizations() {
    let target: LengthSet = "2,3".parse().unwrap();
    let space = SearchSpace::new(8, 12, 3, 24).unwrap();
    let hits = find_realizations(&target, &space, 25).unwrap();
    assert_eq!(hits.len(), 25);
    for h in hits {
        assert_eq!(addendization_set(&h.semigroup, h.element).unwrap(), target);
    }
}
