use std::collections::BTreeSet;

use pslab::commands::COMMANDS;
use pslab::params::{Params, COMMON_KEYS};

fn schema() -> serde_json::Value {
    let text = include_str!("../schema/config.schema.json");
    serde_json::from_str(text).unwrap()
}

/// Every field, set to a dummy value, so serialization lists all keys.
fn all_keys() -> BTreeSet<String> {
    assert_eq!(serde_json::to_string(&Params::default()).unwrap(), "{}");
    let names: Vec<String> = schema()["properties"].as_object().unwrap().keys().cloned().collect();
    let mut obj = serde_json::Map::new();
    for n in &names {
        obj.insert(n.clone(), serde_json::Value::String("1".into()));
    }
    let parsed = Params::from_json(&serde_json::Value::Object(obj).to_string()).expect("schema keys are Params keys");
    let mut keys: BTreeSet<String> = parsed.keys().into_iter().map(String::from).collect();
    keys.insert("command".into());
    keys
}

#[test]
fn schema_lists_exactly_the_config_keys() {
    let props: BTreeSet<String> = schema()["properties"].as_object().unwrap().keys().cloned().collect();
    assert_eq!(props, all_keys());
    assert_eq!(schema()["additionalProperties"], false);
}

#[test]
fn schema_per_command_keys_match_the_cli() {
    let s = schema();
    let rules = s["allOf"].as_array().unwrap();
    assert_eq!(rules.len(), COMMANDS.len());
    for (rule, cmd) in rules.iter().zip(COMMANDS) {
        assert_eq!(rule["if"]["properties"]["command"]["const"], cmd.name);
        let allowed: BTreeSet<&str> = rule["then"]["propertyNames"]["enum"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_str().unwrap())
            .collect();
        let expected: BTreeSet<&str> = cmd
            .keys
            .iter()
            .chain(COMMON_KEYS)
            .copied()
            .chain(["command"])
            .collect();
        assert_eq!(allowed, expected, "{}", cmd.name);
    }
}
