keyword_enum! {
    /// Summarization or date-bucketing function applied to a field.
    Aggregation {
        Count => "count",
        CountDistinct => "countDistinct",
        Sum => "sum",
        Average => "average",
        Max => "max",
        Min => "min",
        Median => "median",
        Year => "year",
        Quarter => "quarter",
        Month => "month",
        Week => "week",
        Day => "day",
        Hour => "hour",
        Minute => "minute",
        Second => "second",
    }
}

impl Aggregation {
    /// Date/time bucketing aggregations (`year` through `second`).
    pub fn is_date_unit(self) -> bool {
        matches!(
            self,
            Aggregation::Year
                | Aggregation::Quarter
                | Aggregation::Month
                | Aggregation::Week
                | Aggregation::Day
                | Aggregation::Hour
                | Aggregation::Minute
                | Aggregation::Second
        )
    }
}

keyword_enum! {
    /// Visual channel a field is mapped to.
    Encoding {
        Color => "color",
        Size => "size",
        Shape => "shape",
        X => "x",
        Y => "y",
        Text => "text",
    }
}

keyword_enum! {
    /// Units of a relative-date filter.
    DateUnit {
        Days => "days",
        Weeks => "weeks",
        Months => "months",
        Quarters => "quarters",
        Years => "years",
    }
}

keyword_enum! {
    Direction {
        Asc => "asc",
        Desc => "desc",
    }
}

keyword_enum! {
    ChartType {
        Text => "text",
        Heatmap => "heatmap",
        Bar => "bar",
        StackedBar => "stackedbar",
        Line => "line",
        Area => "area",
        Gantt => "gantt",
        Scatterplot => "scatterplot",
        Histogram => "histogram",
        Symbolmap => "symbolmap",
        Filledmap => "filledmap",
        Treemap => "treemap",
        Pie => "pie",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vocabulary_sizes() {
        assert_eq!(Aggregation::ALL.len(), 15);
        assert_eq!(Encoding::ALL.len(), 6);
        assert_eq!(DateUnit::ALL.len(), 5);
        assert_eq!(ChartType::ALL.len(), 13);
    }

    #[test]
    fn keywords_are_case_sensitive() {
        assert_eq!(
            Aggregation::from_keyword("countDistinct"),
            Some(Aggregation::CountDistinct)
        );
        assert_eq!(Aggregation::from_keyword("countdistinct"), None);
        assert_eq!(Aggregation::from_keyword("Sum"), None);
        assert_eq!(
            ChartType::from_keyword("stackedbar"),
            Some(ChartType::StackedBar)
        );
    }

    #[test]
    fn keyword_round_trip() {
        for a in Aggregation::ALL {
            assert_eq!(Aggregation::from_keyword(a.keyword()), Some(*a));
        }
        for c in ChartType::ALL {
            assert_eq!(ChartType::from_keyword(&c.to_string()), Some(*c));
        }
    }
}
