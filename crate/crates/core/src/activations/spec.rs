use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;

use libm::erf;

use super::ActivationError;

/// A named activation function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ActivationSpec {
    Relu,
    LeakyRelu(f64),
    Sigmoid,
    Tanh,
    Softplus,
    Elu(f64),
    Swish,
    Gelu,
    /// Softmax over a vector of the given dimension.
    Softmax(usize),
}

fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

fn std_normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

fn std_normal_cdf(x: f64) -> f64 {
    0.5 * (1.0 + erf(x * FRAC_1_SQRT_2))
}

impl ActivationSpec {
    pub fn is_elementwise(&self) -> bool {
        !matches!(self, ActivationSpec::Softmax(_))
    }

    /// Points where the derivative jumps.
    pub fn kinks(&self) -> &'static [f64] {
        match self {
            ActivationSpec::Relu | ActivationSpec::LeakyRelu(_) | ActivationSpec::Elu(_) => &[0.0],
            _ => &[],
        }
    }

    /// Scalar value; `None` for softmax.
    pub fn value(&self, x: f64) -> Option<f64> {
        use ActivationSpec::*;
        Some(match *self {
            Relu => x.max(0.0),
            LeakyRelu(a) => {
                if x >= 0.0 {
                    x
                } else {
                    a * x
                }
            }
            Sigmoid => sigmoid(x),
            Tanh => x.tanh(),
            Softplus => x.max(0.0) + (-x.abs()).exp().ln_1p(),
            Elu(a) => {
                if x > 0.0 {
                    x
                } else {
                    a * x.exp_m1()
                }
            }
            Swish => x * sigmoid(x),
            Gelu => x * std_normal_cdf(x),
            Softmax(_) => return None,
        })
    }

    /// Scalar derivative. At a kink the value of larger magnitude is
    /// returned (the extreme point of the Clarke generalized gradient).
    pub fn derivative(&self, x: f64) -> Option<f64> {
        use ActivationSpec::*;
        Some(match *self {
            Relu => {
                if x >= 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            LeakyRelu(a) => {
                if x > 0.0 {
                    1.0
                } else if x < 0.0 {
                    a
                } else if a.abs() > 1.0 {
                    a
                } else {
                    1.0
                }
            }
            Sigmoid => {
                let s = sigmoid(x);
                s * (1.0 - s)
            }
            Tanh => {
                let t = x.tanh();
                1.0 - t * t
            }
            Softplus => sigmoid(x),
            Elu(a) => {
                if x > 0.0 {
                    1.0
                } else if x < 0.0 || a.abs() > 1.0 {
                    a * x.exp()
                } else {
                    1.0
                }
            }
            Swish => {
                let s = sigmoid(x);
                s + x * s * (1.0 - s)
            }
            Gelu => std_normal_cdf(x) + x * std_normal_pdf(x),
            Softmax(_) => return None,
        })
    }

    /// Scalar second derivative away from kinks.
    pub fn second_derivative(&self, x: f64) -> Option<f64> {
        use ActivationSpec::*;
        Some(match *self {
            Relu | LeakyRelu(_) => 0.0,
            Sigmoid => {
                let s = sigmoid(x);
                s * (1.0 - s) * (1.0 - 2.0 * s)
            }
            Tanh => {
                let t = x.tanh();
                -2.0 * t * (1.0 - t * t)
            }
            Softplus => {
                let s = sigmoid(x);
                s * (1.0 - s)
            }
            Elu(a) => {
                if x > 0.0 {
                    0.0
                } else {
                    a * x.exp()
                }
            }
            Swish => {
                let s = sigmoid(x);
                s * (1.0 - s) * (2.0 + x * (1.0 - 2.0 * s))
            }
            Gelu => std_normal_pdf(x) * (2.0 - x * x),
            Softmax(_) => return None,
        })
    }
}

impl fmt::Display for ActivationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ActivationSpec::*;
        match self {
            Relu => write!(f, "relu"),
            LeakyRelu(a) => write!(f, "leaky_relu({a})"),
            Sigmoid => write!(f, "sigmoid"),
            Tanh => write!(f, "tanh"),
            Softplus => write!(f, "softplus"),
            Elu(a) => write!(f, "elu({a})"),
            Swish => write!(f, "swish"),
            Gelu => write!(f, "gelu"),
            Softmax(d) => write!(f, "softmax({d})"),
        }
    }
}

/// Accepts `name` or `name(param)`; `leaky_relu` defaults to α = 0.01,
/// `elu` to α = 1 and `softmax` to dimension 2.
impl FromStr for ActivationSpec {
    type Err = ActivationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        let (name, arg) = match s.find('(') {
            Some(open) if s.ends_with(')') => (&s[..open], Some(&s[open + 1..s.len() - 1])),
            Some(_) => return Err(ActivationError::UnknownActivation(s.clone())),
            None => (s.as_str(), None),
        };
        let unknown = || ActivationError::UnknownActivation(s.clone());
        let real = |default: f64| -> Result<f64, ActivationError> {
            match arg {
                None => Ok(default),
                Some(a) => a
                    .trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(unknown),
            }
        };
        let spec = match name {
            "relu" if arg.is_none() => ActivationSpec::Relu,
            "leaky_relu" | "leakyrelu" => ActivationSpec::LeakyRelu(real(0.01)?),
            "sigmoid" if arg.is_none() => ActivationSpec::Sigmoid,
            "tanh" if arg.is_none() => ActivationSpec::Tanh,
            "softplus" if arg.is_none() => ActivationSpec::Softplus,
            "elu" => ActivationSpec::Elu(real(1.0)?),
            "swish" | "silu" if arg.is_none() => ActivationSpec::Swish,
            "gelu" if arg.is_none() => ActivationSpec::Gelu,
            "softmax" => {
                let d = match arg {
                    None => 2,
                    Some(a) => a.trim().parse::<usize>().map_err(|_| unknown())?,
                };
                if d < 2 {
                    return Err(unknown());
                }
                ActivationSpec::Softmax(d)
            }
            _ => return Err(unknown()),
        };
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ALL: [ActivationSpec; 9] = [
        ActivationSpec::Relu,
        ActivationSpec::LeakyRelu(0.1),
        ActivationSpec::LeakyRelu(2.0),
        ActivationSpec::Sigmoid,
        ActivationSpec::Tanh,
        ActivationSpec::Softplus,
        ActivationSpec::Elu(1.5),
        ActivationSpec::Swish,
        ActivationSpec::Gelu,
    ];

    #[test]
    fn derivatives_match_finite_differences() {
        let h = 1e-6;
        for a in ALL {
            for i in 0..=200 {
                let x = -10.0 + 0.1 * i as f64 + 0.0371;
                let fd = (a.value(x + h).unwrap() - a.value(x - h).unwrap()) / (2.0 * h);
                assert!((fd - a.derivative(x).unwrap()).abs() < 1e-6, "{a} f' at {x}");
                let fd2 = (a.derivative(x + h).unwrap() - a.derivative(x - h).unwrap()) / (2.0 * h);
                assert!((fd2 - a.second_derivative(x).unwrap()).abs() < 1e-6, "{a} f'' at {x}");
            }
        }
    }

    #[test]
    fn parse_round_trip() {
        for a in ALL.iter().copied().chain([ActivationSpec::Softmax(10)]) {
            assert_eq!(a.to_string().parse::<ActivationSpec>().unwrap(), a);
        }
        assert_eq!("leaky_relu".parse::<ActivationSpec>().unwrap(), ActivationSpec::LeakyRelu(0.01));
        assert!("mish".parse::<ActivationSpec>().is_err());
        assert!("relu(2)".parse::<ActivationSpec>().is_err());
        assert!("softmax(1)".parse::<ActivationSpec>().is_err());
    }

    #[test]
    fn softplus_is_stable() {
        let sp = ActivationSpec::Softplus;
        assert_eq!(sp.value(1000.0).unwrap(), 1000.0);
        assert_eq!(sp.value(-1000.0).unwrap(), 0.0);
    }
}
