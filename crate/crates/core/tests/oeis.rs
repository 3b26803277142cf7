use lambda_words::bfile::BFile;
use lambda_words::fixtures;
use lambda_words::interspersion::interspersion_array;
use lambda_words::ThetaSpec;

const BUDGET: usize = 2000;

fn reference(text: &str) -> Vec<i64> {
    let b = BFile::parse(text).unwrap();
    assert_eq!(b.offset, 0);
    b.values
}

#[test]
fn first_column_indexes_powers_of_3() {
    let expected = reference(fixtures::POWERS_OF_3_POSITIONS);
    assert!(expected.len() >= 40);
    let array = interspersion_array(&ThetaSpec::log2_3(), expected.len(), BUDGET).unwrap();
    let column: Vec<i64> = array.rows.iter().map(|r| r[0] as i64 + 1).collect();
    assert_eq!(column, expected);
}

#[test]
fn first_row_indexes_powers_of_2() {
    let expected = reference(fixtures::POWERS_OF_2_POSITIONS);
    let array = interspersion_array(&ThetaSpec::log2_3(), 1, BUDGET).unwrap();
    let row: Vec<i64> = array.rows[0].iter().map(|&v| v as i64 + 1).collect();
    assert!(row.len() >= expected.len());
    assert_eq!(row[..expected.len()], expected[..]);
}
