mod common;

#[test]
fn every_mutation_is_rejected_with_its_diagnostic() {
    let failures: Vec<String> = common::mutations()
        .iter()
        .filter_map(|m| common::verify(m).err())
        .collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn catalogue_is_large_enough() {
    assert!(common::mutations().len() >= 12);
}

#[test]
fn unmutated_corpus_is_accepted() {
    assert!(!common::check_source(euclid_kernel::BOOK1).rejected());
}
