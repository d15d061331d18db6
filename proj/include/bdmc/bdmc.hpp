#ifndef BDMC_BDMC_HPP
#define BDMC_BDMC_HPP

#include "bdmc/bounds.hpp"
#include "bdmc/channel.hpp"
#include "bdmc/enclosure.hpp"
#include "bdmc/errors.hpp"
#include "bdmc/oracle.hpp"
#include "bdmc/scalar_fn.hpp"

#endif  // BDMC_BDMC_HPP
