#ifndef SUSYZETA_SUSYZETA_HPP
#define SUSYZETA_SUSYZETA_HPP

#include <susyzeta/errors.hpp>
#include <susyzeta/euler_poly.hpp>
#include <susyzeta/grid_lab.hpp>
#include <susyzeta/spectral.hpp>
#include <susyzeta/susy.hpp>
#include <susyzeta/zeros.hpp>
#include <susyzeta/zeta.hpp>

#endif
