use std::process::ExitCode;

use serde_json::Value;

use isotropy::tables::Table;
use isotropy::Error;

use crate::Format;

pub struct Output {
    pub text: String,
    pub json: Value,
    pub table: Option<Table>,
}

impl Output {
    pub fn from_table(table: Table) -> Output {
        Output {
            text: table.to_text(),
            json: serde_json::to_value(&table).expect("table serialises"),
            table: Some(table),
        }
    }

    pub fn render(&self, format: Format) -> Result<String, Failure> {
        match format {
            Format::Text => Ok(self.text.clone()),
            Format::Json => Ok(serde_json::to_string_pretty(&self.json).expect("valid JSON") + "\n"),
            Format::Csv => self
                .table
                .as_ref()
                .map(Table::to_csv)
                .ok_or_else(|| Failure::parse("this command has no CSV form")),
        }
    }
}

/// An error together with the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn parse(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    pub fn report(&self) -> ExitCode {
        eprintln!("error: {}", self.message);
        ExitCode::from(self.code)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Consistency(_) | Error::NonInteger { .. } => 3,
            Error::ZeroVector => 4,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}
