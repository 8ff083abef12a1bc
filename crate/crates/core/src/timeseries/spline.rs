use super::{Frequency, SeriesError, TimeSeries};

/// Natural cubic spline (zero second derivative at both ends).
#[derive(Debug, Clone)]
pub struct NaturalCubicSpline {
    xs: Vec<f64>,
    ys: Vec<f64>,
    // second derivatives at the knots
    m: Vec<f64>,
}

impl NaturalCubicSpline {
    /// `xs` must be strictly increasing and at least three knots long.
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self, SeriesError> {
        let n = xs.len();
        if n != ys.len() {
            return Err(SeriesError::InvalidArgument(format!(
                "{} knots but {} values",
                n,
                ys.len()
            )));
        }
        if n < 3 {
            return Err(SeriesError::InsufficientData { needed: 3, got: n });
        }
        if xs.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(SeriesError::InvalidArgument(
                "spline knots must be strictly increasing".into(),
            ));
        }

        // Tridiagonal system for the interior second derivatives, Thomas algorithm.
        let k = n - 2;
        let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
        let mut diag = vec![0.0; k];
        let mut upper = vec![0.0; k];
        let mut rhs = vec![0.0; k];
        for i in 0..k {
            diag[i] = 2.0 * (h[i] + h[i + 1]);
            upper[i] = h[i + 1];
            rhs[i] = 6.0 * ((ys[i + 2] - ys[i + 1]) / h[i + 1] - (ys[i + 1] - ys[i]) / h[i]);
        }
        for i in 1..k {
            let w = h[i] / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        let mut interior = vec![0.0; k];
        for i in (0..k).rev() {
            let next = if i + 1 < k { interior[i + 1] } else { 0.0 };
            interior[i] = (rhs[i] - upper[i] * next) / diag[i];
        }

        let mut m = Vec::with_capacity(n);
        m.push(0.0);
        m.extend(interior);
        m.push(0.0);
        Ok(NaturalCubicSpline { xs, ys, m })
    }

    pub fn second_derivatives(&self) -> &[f64] {
        &self.m
    }

    /// Evaluates the interpolant; outside the knot range the end cubic is extended.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        let i = match self.xs.partition_point(|&k| k <= x) {
            0 => 0,
            p if p >= n => n - 2,
            p => p - 1,
        };
        let (x0, x1) = (self.xs[i], self.xs[i + 1]);
        let h = x1 - x0;
        let a = (x1 - x) / h;
        let b = (x - x0) / h;
        a * self.ys[i]
            + b * self.ys[i + 1]
            + ((a * a * a - a) * self.m[i] + (b * b * b - b) * self.m[i + 1]) * h * h / 6.0
    }
}

/// Interpolates a quarterly series to monthly frequency.
///
/// Each quarterly value is placed on the middle month of its quarter; the
/// output runs from the first to the last knot month inclusive.
pub fn spline_to_monthly(q: &TimeSeries) -> Result<TimeSeries, SeriesError> {
    if q.frequency() != Frequency::Quarterly {
        return Err(SeriesError::InvalidArgument(format!(
            "`{}` is not a quarterly series",
            q.name()
        )));
    }
    if q.len() < 4 {
        return Err(SeriesError::InsufficientData {
            needed: 4,
            got: q.len(),
        });
    }
    let xs: Vec<f64> = (0..q.len()).map(|i| 3.0 * i as f64).collect();
    let spline = NaturalCubicSpline::new(xs, q.values().to_vec())?;
    let months = 3 * (q.len() - 1) + 1;
    let mut values: Vec<f64> = (0..months).map(|j| spline.eval(j as f64)).collect();
    // knots are reproduced exactly rather than up to rounding
    for (i, &v) in q.values().iter().enumerate() {
        values[3 * i] = v;
    }
    TimeSeries::new(q.name(), q.start().middle_month(), values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::timeseries::Period;
    use approx::assert_abs_diff_eq;
    use nalgebra::{DMatrix, DVector};

    fn quarterly(values: &[f64]) -> TimeSeries {
        TimeSeries::new("c", Period::quarterly(1999, 1), values.to_vec()).unwrap()
    }

    /// Dense oracle: solve the full (n x n) natural-spline system with LU.
    fn dense_second_derivatives(xs: &[f64], ys: &[f64]) -> Vec<f64> {
        let n = xs.len();
        let mut a = DMatrix::<f64>::zeros(n, n);
        let mut b = DVector::<f64>::zeros(n);
        a[(0, 0)] = 1.0;
        a[(n - 1, n - 1)] = 1.0;
        for i in 1..n - 1 {
            let h0 = xs[i] - xs[i - 1];
            let h1 = xs[i + 1] - xs[i];
            a[(i, i - 1)] = h0;
            a[(i, i)] = 2.0 * (h0 + h1);
            a[(i, i + 1)] = h1;
            b[i] = 6.0 * ((ys[i + 1] - ys[i]) / h1 - (ys[i] - ys[i - 1]) / h0);
        }
        a.lu().solve(&b).unwrap().iter().copied().collect()
    }

    #[test]
    fn constant_series_is_reproduced() {
        let m = spline_to_monthly(&quarterly(&[2.5; 6])).unwrap();
        assert_eq!(m.len(), 16);
        assert_eq!(m.start(), Period::monthly(1999, 2));
        for v in m.values() {
            assert_abs_diff_eq!(*v, 2.5, epsilon = 1e-14);
        }
    }

    #[test]
    fn linear_series_is_reproduced() {
        let m = spline_to_monthly(&quarterly(&[1.0, 2.0, 3.0, 4.0])).unwrap();
        assert_eq!(m.len(), 10);
        assert_eq!(m.end(), Period::monthly(1999, 11));
        for (j, v) in m.values().iter().enumerate() {
            assert_abs_diff_eq!(*v, 1.0 + j as f64 / 3.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn eight_knots_match_dense_solver() {
        let ys = [3.1, 2.7, 4.4, 5.0, 4.2, 6.9, 7.3, 6.1];
        let xs: Vec<f64> = (0..8).map(|i| 3.0 * i as f64).collect();
        let spline = NaturalCubicSpline::new(xs.clone(), ys.to_vec()).unwrap();
        let oracle = dense_second_derivatives(&xs, &ys);
        for (a, b) in spline.second_derivatives().iter().zip(&oracle) {
            assert_abs_diff_eq!(*a, *b, epsilon = 1e-12);
        }
        for (x, y) in xs.iter().zip(&ys) {
            assert!((spline.eval(*x) - y).abs() <= 1e-10 * y.abs());
        }
        let m = spline_to_monthly(&quarterly(&ys)).unwrap();
        for (i, y) in ys.iter().enumerate() {
            assert!((m.values()[3 * i] - y).abs() <= 1e-10 * y.abs());
        }
    }

    #[test]
    fn uneven_knots_are_smooth() {
        let xs = vec![0.0, 1.0, 2.5, 4.0, 7.0];
        let ys = vec![0.0, 1.0, 0.5, 2.0, 1.0];
        let s = NaturalCubicSpline::new(xs.clone(), ys.clone()).unwrap();
        let oracle = dense_second_derivatives(&xs, &ys);
        for (a, b) in s.second_derivatives().iter().zip(&oracle) {
            assert_abs_diff_eq!(*a, *b, epsilon = 1e-12);
        }
        // first derivative continuous across an interior knot
        let d = 1e-6;
        let left = (s.eval(2.5) - s.eval(2.5 - d)) / d;
        let right = (s.eval(2.5 + d) - s.eval(2.5)) / d;
        assert_abs_diff_eq!(left, right, epsilon = 1e-4);
    }

    #[test]
    fn too_few_knots() {
        let err = spline_to_monthly(&quarterly(&[1.0, 2.0, 3.0])).unwrap_err();
        assert!(matches!(err, SeriesError::InsufficientData { needed: 4, got: 3 }));
        let monthly = TimeSeries::new("m", Period::monthly(2000, 1), vec![1.0; 5]).unwrap();
        assert!(spline_to_monthly(&monthly).is_err());
    }
}
