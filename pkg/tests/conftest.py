from curvelab import mpoly

# re-multiply every pseudo-division in test runs
mpoly.CHECK_IDENTITIES = True
