"""Wiesner banknotes on the fixture simulator, and two ways to fail at copying one."""
import numpy as np

from unizk.money import (MoneyAuthority, attack_fresh_forgery, attack_measure_resend,
                         attack_success_probability, note_gen, ver)

rng = np.random.default_rng(1)
bank = MoneyAuthority(rng)

# A note is n qubits, each prepared in one of |0>, |1>, |+>, |->.  The bank
# keeps the bases and bits; the holder only gets the handle and the serial.
note, serial = note_gen(bank, 8)
print("serial:", serial.hex())
print("honest verify:", ver(bank, note, serial))
print("verify again (state survives):", ver(bank, note, serial))

# Measure-and-resend: guess a basis per qubit, measure, prepare two copies of
# whatever came out.  Each qubit survives with probability 5/8 for both copies.
trials, wins = 20_000, 0
for _ in range(trials):
    h, s = note_gen(bank, 8)
    a, b = attack_measure_resend(bank, h)
    wins += ver(bank, a, s) and ver(bank, b, s)
print(f"measure-and-resend: {wins / trials:.4f} observed, "
      f"{attack_success_probability('measure-resend', 8):.4f} exact")

# Keeping the original and inventing the second copy is worse: 1/2 per qubit.
wins = 0
for _ in range(trials):
    h, s = note_gen(bank, 8)
    a, b = attack_fresh_forgery(bank, h)
    wins += ver(bank, a, s) and ver(bank, b, s)
print(f"fresh forgery:      {wins / trials:.4f} observed, "
      f"{attack_success_probability('fresh-forgery', 8):.4f} exact")

# The exact figures come from enumerating Born-rule probabilities over the
# four preparation states, not from sampling.
for n in (1, 4, 8, 16):
    print(f"n={n:>2}  measure-resend {attack_success_probability('measure-resend', n):.3e}")
