//! Flat CSV export.
//!
//! Columns: `set,option,f1,...,fn,active`. Sets and options are numbered
//! from 1, the `f` columns hold the level of every factor (inactive ones
//! included) and `active` is the set's mask as a 0/1 string.

use std::io::Write;

use partial_profile::design::ChoiceSet;

pub fn write_csv<W: Write>(out: W, n: usize, sets: &[ChoiceSet]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["set".to_string(), "option".to_string()];
    header.extend((1..=n).map(|h| format!("f{h}")));
    header.push("active".to_string());
    w.write_record(&header)?;
    for (p, set) in sets.iter().enumerate() {
        let mask: String = set.active().iter().map(|&a| if a { '1' } else { '0' }).collect();
        for (i, profile) in set.profiles().iter().enumerate() {
            let mut record = vec![(p + 1).to_string(), (i + 1).to_string()];
            record.extend(profile.levels().iter().map(u8::to_string));
            record.push(mask.clone());
            w.write_record(&record)?;
        }
    }
    w.flush()?;
    Ok(())
}
