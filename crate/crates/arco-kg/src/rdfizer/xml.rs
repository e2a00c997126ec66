//! The simplified record XML format.
//!
//! ```xml
//! <record id="0700123" type="OA" versions="1,2">
//!   <object>dipinto</object>
//!   <title>Ritratto di dama</title>
//!   <author role="painter">Leonardo da Vinci</author>
//!   <material>carta</material>
//!   <technique>pittura a olio</technique>
//!   <measurement type="height" unit="cm">30</measurement>
//!   <location type="storage" from="1871">Roma</location>
//!   <cadastral>Foglio 12, particella 345</cadastral>
//!   <component id="0700123-01"><object>cornice</object></component>
//! </record>
//! ```

use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;

use super::{Author, CatalogueRecord, LocationEntry, Measurement, RecordError};

/// A record plus any warnings emitted while reading it (unknown
/// elements are skipped, not fatal).
#[derive(Debug)]
pub struct ParsedRecord {
    pub record: CatalogueRecord,
    pub warnings: Vec<String>,
}

/// Parse one `<record>` document.
pub fn parse_record_xml(text: &str) -> Result<ParsedRecord, RecordError> {
    let mut reader = Reader::from_str(text);
    reader.config_mut().trim_text(true);

    loop {
        match read_event(&mut reader)? {
            Event::Start(start) if start.name().as_ref() == b"record" => {
                let mut warnings = Vec::new();
                let record = parse_record_element(&mut reader, &start, None, &mut warnings)?;
                return Ok(ParsedRecord { record, warnings });
            }
            Event::Empty(start) if start.name().as_ref() == b"record" => {
                return Ok(ParsedRecord {
                    record: record_header(&start, None)?,
                    warnings: Vec::new(),
                });
            }
            Event::Decl(_) | Event::Comment(_) | Event::Text(_) | Event::PI(_) => continue,
            Event::Eof => return Err(RecordError::Xml("no <record> element found".into())),
            other => {
                return Err(RecordError::Xml(format!(
                    "expected <record> root element, found {other:?}"
                )))
            }
        }
    }
}

fn read_event<'a>(reader: &mut Reader<&'a [u8]>) -> Result<Event<'a>, RecordError> {
    reader
        .read_event()
        .map_err(|e| RecordError::Xml(format!("position {}: {e}", reader.error_position())))
}

fn attr(start: &BytesStart, name: &str) -> Result<Option<String>, RecordError> {
    for a in start.attributes() {
        let a = a.map_err(|e| RecordError::Xml(e.to_string()))?;
        if a.key.as_ref() == name.as_bytes() {
            let value = a
                .unescape_value()
                .map_err(|e| RecordError::Xml(e.to_string()))?;
            return Ok(Some(value.into_owned()));
        }
    }
    Ok(None)
}

/// Read the id/type/versions attributes into an otherwise empty record.
fn record_header(
    start: &BytesStart,
    inherited_type: Option<&str>,
) -> Result<CatalogueRecord, RecordError> {
    let record_id = match attr(start, "id")? {
        Some(id) if !id.trim().is_empty() => id.trim().to_string(),
        _ => return Err(RecordError::MissingRecordId),
    };
    let type_code = match attr(start, "type")? {
        Some(code) if !code.trim().is_empty() => code.trim().to_string(),
        _ => match inherited_type {
            Some(code) => code.to_string(),
            None => {
                return Err(RecordError::Xml(format!(
                    "record {record_id}: missing type attribute"
                )))
            }
        },
    };
    let versions: Vec<String> = attr(start, "versions")?
        .map(|v| {
            v.split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .collect::<Vec<_>>()
        })
        .filter(|v: &Vec<String>| !v.is_empty())
        .unwrap_or_else(|| vec!["1".to_string()]);

    Ok(CatalogueRecord {
        record_id,
        type_code,
        versions,
        object_name: None,
        title: None,
        authors: Vec::new(),
        materials: Vec::new(),
        techniques: Vec::new(),
        measurements: Vec::new(),
        locations: Vec::new(),
        cadastral: None,
        components: Vec::new(),
    })
}

fn parse_record_element(
    reader: &mut Reader<&[u8]>,
    start: &BytesStart,
    inherited_type: Option<&str>,
    warnings: &mut Vec<String>,
) -> Result<CatalogueRecord, RecordError> {
    let mut record = record_header(start, inherited_type)?;
    let record_id = record.record_id.clone();

    let empty_err = |element: &str| RecordError::EmptyElement {
        record: record_id.clone(),
        element: element.to_string(),
    };

    loop {
        match read_event(reader)? {
            Event::Start(child) => {
                let name = String::from_utf8_lossy(child.name().as_ref()).into_owned();
                match name.as_str() {
                    "object" => record.object_name = Some(read_text(reader, &child, &empty_err)?),
                    "title" => record.title = Some(read_text(reader, &child, &empty_err)?),
                    "author" => {
                        let role = attr(&child, "role")?;
                        let name = read_text(reader, &child, &empty_err)?;
                        record.authors.push(Author { name, role });
                    }
                    "material" => record.materials.push(read_text(reader, &child, &empty_err)?),
                    "technique" => record.techniques.push(read_text(reader, &child, &empty_err)?),
                    "measurement" => {
                        let kind = attr(&child, "type")?.unwrap_or_else(|| "size".into());
                        let unit = attr(&child, "unit")?.unwrap_or_default();
                        let value = read_text(reader, &child, &empty_err)?;
                        validate_measurement(&record.record_id, &value)?;
                        record.measurements.push(Measurement { kind, value, unit });
                    }
                    "location" => {
                        let location_type = attr(&child, "type")?.unwrap_or_else(|| "storage".into());
                        let from = non_empty(attr(&child, "from")?);
                        let to = non_empty(attr(&child, "to")?);
                        for date in [&from, &to].into_iter().flatten() {
                            validate_date(&record.record_id, date)?;
                        }
                        let place_label = read_text(reader, &child, &empty_err)?;
                        record.locations.push(LocationEntry {
                            location_type,
                            place_label,
                            from,
                            to,
                        });
                    }
                    "cadastral" => record.cadastral = Some(read_text(reader, &child, &empty_err)?),
                    "component" => {
                        let component = parse_record_element(
                            reader,
                            &child.to_owned(),
                            Some(&record.type_code),
                            warnings,
                        )?;
                        record.components.push(component);
                    }
                    other => {
                        warnings.push(format!(
                            "record {}: ignoring unknown element <{other}>",
                            record.record_id
                        ));
                        reader
                            .read_to_end(child.name())
                            .map_err(|e| RecordError::Xml(e.to_string()))?;
                    }
                }
            }
            Event::Empty(child) => {
                let name = String::from_utf8_lossy(child.name().as_ref()).into_owned();
                warnings.push(format!(
                    "record {}: ignoring empty element <{name}/>",
                    record.record_id
                ));
            }
            Event::End(end) if end.name() == start.name() => break,
            Event::Eof => {
                return Err(RecordError::Xml(format!(
                    "record {}: unexpected end of document",
                    record.record_id
                )))
            }
            Event::Text(t) => {
                let text = t.unescape().map_err(|e| RecordError::Xml(e.to_string()))?;
                if !text.trim().is_empty() {
                    warnings.push(format!(
                        "record {}: ignoring stray text '{}'",
                        record.record_id,
                        text.trim()
                    ));
                }
            }
            _ => continue,
        }
    }
    Ok(record)
}

fn read_text(
    reader: &mut Reader<&[u8]>,
    element: &BytesStart,
    empty_err: &dyn Fn(&str) -> RecordError,
) -> Result<String, RecordError> {
    let name = String::from_utf8_lossy(element.name().as_ref()).into_owned();
    let text = reader
        .read_text(element.name())
        .map_err(|e| RecordError::Xml(format!("position {}: {e}", reader.error_position())))?;
    let text = text.trim().to_string();
    if text.is_empty() {
        return Err(empty_err(&name));
    }
    Ok(text)
}

fn non_empty(value: Option<String>) -> Option<String> {
    value.filter(|v| !v.trim().is_empty())
}

fn validate_measurement(record: &str, value: &str) -> Result<(), RecordError> {
    match value.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 0.0 => Ok(()),
        _ => Err(RecordError::InvalidMeasurement {
            record: record.to_string(),
            value: value.to_string(),
        }),
    }
}

/// ISO-8601 year (`1871`) or full date (`1871-03-14`).
fn validate_date(record: &str, value: &str) -> Result<(), RecordError> {
    let bytes = value.as_bytes();
    let ok = match bytes.len() {
        4 => bytes.iter().all(u8::is_ascii_digit),
        10 => {
            bytes[..4].iter().all(u8::is_ascii_digit)
                && bytes[4] == b'-'
                && bytes[5..7].iter().all(u8::is_ascii_digit)
                && bytes[7] == b'-'
                && bytes[8..10].iter().all(u8::is_ascii_digit)
        }
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(RecordError::InvalidDate {
            record: record.to_string(),
            value: value.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_record_gets_default_version() {
        for doc in [
            r#"<record id="0700001" type="OA"/>"#,
            r#"<record id="0700001" type="OA"></record>"#,
        ] {
            let parsed = parse_record_xml(doc).unwrap();
            assert_eq!(parsed.record.record_id, "0700001");
            assert_eq!(parsed.record.versions, vec!["1"]);
            assert!(parsed.record.title.is_none());
        }
    }

    #[test]
    fn materials_and_techniques_collected() {
        let parsed = parse_record_xml(
            r#"<record id="r1" type="OA">
                 <material>carta</material>
                 <technique>pittura a olio</technique>
               </record>"#,
        )
        .unwrap();
        assert_eq!(parsed.record.materials, vec!["carta"]);
        assert_eq!(parsed.record.techniques, vec!["pittura a olio"]);
    }

    #[test]
    fn two_locations_collected() {
        let parsed = parse_record_xml(
            r#"<record id="r1" type="OA">
                 <location type="storage">Roma</location>
                 <location type="finding" from="1871" to="1900-01-02">Ostia</location>
               </record>"#,
        )
        .unwrap();
        assert_eq!(parsed.record.locations.len(), 2);
        assert_eq!(parsed.record.locations[1].from.as_deref(), Some("1871"));
        assert_eq!(parsed.record.locations[1].to.as_deref(), Some("1900-01-02"));
    }

    #[test]
    fn unknown_elements_warn_but_do_not_fail() {
        let parsed = parse_record_xml(
            r#"<record id="r1" type="OA"><mystery>??</mystery><title>ok</title></record>"#,
        )
        .unwrap();
        assert_eq!(parsed.record.title.as_deref(), Some("ok"));
        assert_eq!(parsed.warnings.len(), 1);
        assert!(parsed.warnings[0].contains("mystery"));
    }

    #[test]
    fn missing_id_is_an_error() {
        assert!(matches!(
            parse_record_xml(r#"<record type="OA"><title>x</title></record>"#),
            Err(RecordError::MissingRecordId)
        ));
    }

    #[test]
    fn bad_measurement_rejected() {
        let result = parse_record_xml(
            r#"<record id="r1" type="OA"><measurement type="height" unit="cm">-3</measurement></record>"#,
        );
        assert!(matches!(result, Err(RecordError::InvalidMeasurement { .. })));
    }

    #[test]
    fn bad_date_rejected() {
        let result = parse_record_xml(
            r#"<record id="r1" type="OA"><location type="storage" from="yesterday">Roma</location></record>"#,
        );
        assert!(matches!(result, Err(RecordError::InvalidDate { .. })));
    }

    #[test]
    fn component_inherits_type_code() {
        let parsed = parse_record_xml(
            r#"<record id="r1" type="BDM" versions="1,2">
                 <component id="r1-01"><object>cappello</object></component>
               </record>"#,
        )
        .unwrap();
        assert_eq!(parsed.record.components.len(), 1);
        assert_eq!(parsed.record.components[0].type_code, "BDM");
        assert_eq!(parsed.record.components[0].record_id, "r1-01");
    }

    #[test]
    fn malformed_xml_reports_position() {
        match parse_record_xml("<record id='r1' type='OA'><title>oops</record>") {
            Err(RecordError::Xml(message)) => assert!(message.contains("position")),
            other => panic!("expected XML error, got {other:?}"),
        }
    }
}
